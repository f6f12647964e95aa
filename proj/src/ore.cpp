#include "eden/ore.hpp"

#include <stdexcept>

#include "eden/common.hpp"

namespace eden {

namespace {

ElementSet abelian_box(const GroupCtx& ctx, uint64_t side) {
    int rank = ctx.rank();
    std::vector<Word> elems;
    std::vector<int64_t> v(static_cast<size_t>(rank), 0);
    for (;;) {
        elems.push_back(word_from_vector(ctx, v));
        int i = 0;
        while (i < rank && ++v[static_cast<size_t>(i)] >= static_cast<int64_t>(side))
            v[static_cast<size_t>(i++)] = 0;
        if (i == rank) break;
    }
    return make_element_set(std::move(elems));
}

uint64_t ipow(uint64_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

uint64_t folner_side(const GroupCtx& ctx, const ElementSet& sprime, const Rat& ratio,
                     uint64_t max_box) {
    if (ctx.family != GroupFamily::FreeAbelian)
        throw std::invalid_argument("folner_set: carrier must be free abelian");
    if (!(ratio > 1)) throw std::invalid_argument("folner_set: ratio must exceed 1");
    if (sprime.empty()) throw std::invalid_argument("folner_set: empty generating set");
    for (uint64_t side = 1;; ++side) {
        if (ipow(side, ctx.rank()) > max_box)
            throw resource_cap_error("folner_set: no box within the size cap meets the ratio");
        ElementSet box = abelian_box(ctx, side);
        Rat grown(static_cast<unsigned long>(set_product(ctx, sprime, box).size()));
        if (grown < ratio * Rat(static_cast<unsigned long>(box.size()))) return side;
    }
}

GRElem part_to_elem(uint32_t p, const ElementSet& box, const std::vector<uint32_t>& v,
                    size_t offset) {
    GRElem e;
    e.p = p;
    for (size_t i = 0; i < box.size(); ++i)
        if (v[offset + i] != 0) e.terms[box[i]] = v[offset + i];
    return e;
}

}  // namespace

ElementSet folner_set(const GroupCtx& ctx, const ElementSet& sprime, const Rat& ratio,
                      uint64_t max_box) {
    return abelian_box(ctx, folner_side(ctx, sprime, ratio, max_box));
}

OreSolution ore_solve(const GroupCtx& ctx, const GRElem& a, const GRElem& s, uint64_t max_box) {
    if (ctx.family != GroupFamily::FreeAbelian)
        throw std::invalid_argument("ore_solve: carrier must be free abelian");
    if (a.p != s.p) throw std::invalid_argument("ore_solve: mismatched moduli");
    if (gr_is_zero(s)) throw std::invalid_argument("ore_solve: s must be nonzero");

    std::vector<Word> sup;
    for (const auto& [w, c] : a.terms) sup.push_back(w);
    for (const auto& [w, c] : s.terms) sup.push_back(w);
    ElementSet sprime = make_element_set(std::move(sup));

    // Tamari's count: 2#F unknowns against #(S'F) < 2#F equations, so
    // the kernel is nonzero, and t = 0 would force b*s = 0 in an
    // integral domain. Larger boxes are tried anyway as a guard.
    for (uint64_t side = folner_side(ctx, sprime, Rat(2), max_box);; side *= 2) {
        if (ipow(side, ctx.rank()) > max_box)
            throw resource_cap_error("ore_solve: support box exceeds the size cap");
        ElementSet box = abelian_box(ctx, side);
        ElementSet eqs = set_product(ctx, sprime, box);
        size_t nf = box.size();
        FFMatrix k = make_matrix(a.p, eqs.size(), 2 * nf);
        for (size_t gi = 0; gi < eqs.size(); ++gi) {
            for (size_t fi = 0; fi < nf; ++fi) {
                Word shift = mul(ctx, eqs[gi], inv(ctx, box[fi]));
                if (auto it = a.terms.find(shift); it != a.terms.end()) k.at(gi, fi) = it->second;
                if (auto it = s.terms.find(shift); it != s.terms.end())
                    k.at(gi, nf + fi) = (a.p - it->second) % a.p;
            }
        }
        for (const std::vector<uint32_t>& v : kernel_basis(k)) {
            bool t_nonzero = false;
            for (size_t i = 0; i < nf; ++i) t_nonzero = t_nonzero || v[i] != 0;
            if (!t_nonzero) continue;
            OreSolution sol;
            sol.t = part_to_elem(a.p, box, v, 0);
            sol.b = part_to_elem(a.p, box, v, nf);
            sol.box = std::move(box);
            if (gr_mul(ctx, a, sol.t) != gr_mul(ctx, sol.b, s))
                throw std::logic_error("ore_solve: solution failed convolution re-verification");
            return sol;
        }
    }
}

FailureWitness failure_witness(const LinearCA& ca) {
    FailureWitness w;
    w.M = to_groupring_matrix(ca);
    for (size_t i = 0; i < w.M.rows && !w.zero_row; ++i) {
        bool zero = true;
        for (size_t j = 0; j < w.M.cols; ++j) zero = zero && gr_is_zero(w.M.at(i, j));
        if (zero) w.zero_row = i;
    }
    return w;
}

std::optional<MepPair> injectivity_report(const LinearCA& ca, int r) {
    return mep_search(ca, r);
}

}  // namespace eden
