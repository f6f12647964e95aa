#include "eden/groupring.hpp"

#include "eden/common.hpp"

namespace eden {

GRElem gr_zero(uint32_t p) {
    GRElem a;
    a.p = p;
    return a;
}

GRElem gr_one(const GroupCtx& ctx, uint32_t p) { return gr_monomial(ctx, p, identity(ctx)); }

GRElem gr_monomial(const GroupCtx& ctx, uint32_t p, const Word& g, uint32_t coeff) {
    (void)ctx;
    GRElem a;
    a.p = p;
    if (coeff % p) a.terms[g] = coeff % p;
    return a;
}

bool gr_is_zero(const GRElem& a) { return a.terms.empty(); }

GRElem gr_add(const GRElem& a, const GRElem& b) {
    if (a.p != b.p) throw decode_error("group ring modulus mismatch");
    GRElem out = a;
    for (const auto& [g, c] : b.terms) {
        uint32_t v = ff_add(a.p, out.terms.count(g) ? out.terms[g] : 0, c);
        if (v)
            out.terms[g] = v;
        else
            out.terms.erase(g);
    }
    return out;
}

GRElem gr_neg(const GRElem& a) {
    GRElem out = a;
    for (auto& [g, c] : out.terms) c = a.p - c;
    return out;
}

GRElem gr_scale(uint32_t lambda, const GRElem& a) {
    GRElem out = gr_zero(a.p);
    lambda %= a.p;
    if (!lambda) return out;
    for (const auto& [g, c] : a.terms) {
        uint32_t v = ff_mul(a.p, lambda, c);
        if (v) out.terms[g] = v;
    }
    return out;
}

GRElem gr_mul(const GroupCtx& ctx, const GRElem& a, const GRElem& b) {
    if (a.p != b.p) throw decode_error("group ring modulus mismatch");
    GRElem out = gr_zero(a.p);
    for (const auto& [g, ac] : a.terms)
        for (const auto& [h, bc] : b.terms) {
            Word gh = mul(ctx, g, h);
            uint32_t v = ff_add(a.p, out.terms.count(gh) ? out.terms[gh] : 0, ff_mul(a.p, ac, bc));
            if (v)
                out.terms[gh] = v;
            else
                out.terms.erase(gh);
        }
    return out;
}

GRMatrix gr_matrix(uint32_t p, size_t rows, size_t cols) {
    GRMatrix m;
    m.p = p;
    m.rows = rows;
    m.cols = cols;
    m.e.assign(rows * cols, gr_zero(p));
    return m;
}

std::vector<GRElem> gr_mat_apply(const GroupCtx& ctx, const GRMatrix& m,
                                 const std::vector<GRElem>& v) {
    if (v.size() != m.cols) throw decode_error("gr_mat_apply: dimension mismatch");
    std::vector<GRElem> out(m.rows, gr_zero(m.p));
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            out[i] = gr_add(out[i], gr_mul(ctx, m.at(i, j), v[j]));
    return out;
}

GRMatrix restrict_scalars(const ExtField& f, const ExtGRMatrix& m) {
    size_t d = static_cast<size_t>(f.d);
    GRMatrix out = gr_matrix(f.p, m.rows * d, m.cols * d);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            for (const auto& [g, coeff] : m.at(i, j).terms) {
                FFMatrix block = regular_repr(f, coeff);
                for (size_t bi = 0; bi < d; ++bi)
                    for (size_t bj = 0; bj < d; ++bj) {
                        uint32_t v = block.at(bi, bj);
                        if (!v) continue;
                        GRElem& dst = out.at(i * d + bi, j * d + bj);
                        uint32_t nv = ff_add(f.p, dst.terms.count(g) ? dst.terms[g] : 0, v);
                        if (nv)
                            dst.terms[g] = nv;
                        else
                            dst.terms.erase(g);
                    }
            }
    return out;
}

}  // namespace eden
