#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace eden {

bool is_prime_u64(uint64_t n);

// Dense row-major matrix over GF(p), p prime, p < 2^31.
struct FFMatrix {
    uint32_t p = 2;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<uint32_t> a;

    uint32_t& at(size_t i, size_t j) { return a[i * cols + j]; }
    uint32_t at(size_t i, size_t j) const { return a[i * cols + j]; }
    void set(size_t i, size_t j, uint64_t v) { at(i, j) = static_cast<uint32_t>(v % p); }

    bool operator==(const FFMatrix&) const = default;
};

// Validates the modulus (primality, size bound) and dimensions.
FFMatrix make_matrix(uint32_t p, size_t rows, size_t cols);
FFMatrix ff_identity(uint32_t p, size_t n);

// Elimination backend: Auto picks the bit-packed path for p = 2.
enum class ElimBackend { Auto, Generic, Packed2 };

size_t ff_rank(const FFMatrix& m, ElimBackend backend = ElimBackend::Auto);

// Canonical kernel basis read off the reduced row echelon form: one
// vector per free column, unit at that column. Deterministic.
std::vector<std::vector<uint32_t>> kernel_basis(const FFMatrix& m,
                                                ElimBackend backend = ElimBackend::Auto);

// Some solution of Mv = rhs, or nullopt when inconsistent.
std::optional<std::vector<uint32_t>> ff_solve(const FFMatrix& m, const std::vector<uint32_t>& rhs);

// Basis of the intersection of the kernels of the blocks (equal column
// counts). Processes blocks in increasing kernel-dimension order and
// stops as soon as the running intersection hits dimension zero.
std::vector<std::vector<uint32_t>> intersect_kernels(const std::vector<FFMatrix>& blocks);

FFMatrix matmul(const FFMatrix& a, const FFMatrix& b);
std::vector<uint32_t> matvec(const FFMatrix& m, const std::vector<uint32_t>& v);
FFMatrix transpose(const FFMatrix& m);
FFMatrix vstack(const std::vector<FFMatrix>& blocks);
// Matrix whose columns are the given vectors.
FFMatrix columns_matrix(uint32_t p, size_t cols_len, const std::vector<std::vector<uint32_t>>& vs);

uint32_t ff_add(uint32_t p, uint32_t a, uint32_t b);
uint32_t ff_sub(uint32_t p, uint32_t a, uint32_t b);
uint32_t ff_mul(uint32_t p, uint32_t a, uint32_t b);
uint32_t ff_inv(uint32_t p, uint32_t a);

// GF(p^d) for d <= 4, as polynomials modulo a fixed irreducible. The
// polynomial is the first monic irreducible of degree d in the base-p
// counting order of the low coefficients (x^2+x+1 for GF(4), x^3+x+1
// for GF(8)), verified irreducible by exhaustive trial division.
struct ExtField {
    uint32_t p = 2;
    int d = 1;
    std::vector<uint32_t> poly;  // coefficients of x^0..x^d, poly[d] = 1

    static ExtField make(uint32_t p, int d);
};

// Element of GF(p^d): d coefficients, lowest degree first.
using ExtScalar = std::vector<uint32_t>;

ExtScalar ext_zero(const ExtField& f);
ExtScalar ext_one(const ExtField& f);
ExtScalar ext_add(const ExtField& f, const ExtScalar& a, const ExtScalar& b);
ExtScalar ext_mul(const ExtField& f, const ExtScalar& a, const ExtScalar& b);
bool ext_is_zero(const ExtScalar& a);

// d x d matrix of multiplication by a over GF(p), acting on coordinate
// columns in the basis {1, x, ..., x^(d-1)}.
FFMatrix regular_repr(const ExtField& f, const ExtScalar& a);

}  // namespace eden
