#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "eden/ff.hpp"
#include "eden/group.hpp"

namespace eden {

// Finitely supported function G -> GF(p), an element of the group ring
// KG. Only nonzero coefficients are stored.
struct GRElem {
    uint32_t p = 2;
    std::map<Word, uint32_t> terms;

    bool operator==(const GRElem&) const = default;
};

GRElem gr_zero(uint32_t p);
GRElem gr_one(const GroupCtx& ctx, uint32_t p);
GRElem gr_monomial(const GroupCtx& ctx, uint32_t p, const Word& g, uint32_t coeff = 1);
bool gr_is_zero(const GRElem& a);

GRElem gr_add(const GRElem& a, const GRElem& b);
GRElem gr_neg(const GRElem& a);
GRElem gr_scale(uint32_t lambda, const GRElem& a);
// Convolution product: (ab)(g) = sum over h of a(h) * b(h^-1 g).
GRElem gr_mul(const GroupCtx& ctx, const GRElem& a, const GRElem& b);

// Matrix over the group ring, dense row-major.
struct GRMatrix {
    uint32_t p = 2;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<GRElem> e;

    GRElem& at(size_t i, size_t j) { return e[i * cols + j]; }
    const GRElem& at(size_t i, size_t j) const { return e[i * cols + j]; }

    bool operator==(const GRMatrix&) const = default;
};

GRMatrix gr_matrix(uint32_t p, size_t rows, size_t cols);

// Ring action on column vectors of group-ring elements, entrywise
// convolution: out_i = sum_j M_ij * v_j.
std::vector<GRElem> gr_mat_apply(const GroupCtx& ctx, const GRMatrix& m,
                                 const std::vector<GRElem>& v);

// Expands each entry through the regular representation of GF(p^d):
// an r x c matrix over (p^d)G becomes rd x cd over GF(p)G. Extension
// coefficients enter as ExtScalar values via the companion encoder.
struct ExtGRElem {
    std::map<Word, ExtScalar> terms;
};
struct ExtGRMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<ExtGRElem> e;

    ExtGRElem& at(size_t i, size_t j) { return e[i * cols + j]; }
    const ExtGRElem& at(size_t i, size_t j) const { return e[i * cols + j]; }
};
GRMatrix restrict_scalars(const ExtField& f, const ExtGRMatrix& m);

}  // namespace eden
