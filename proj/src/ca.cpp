#include "eden/ca.hpp"

#include <algorithm>

#include "eden/common.hpp"

namespace eden {

void validate_ca(const LinearCA& ca) {
    if (ca.S.empty()) throw decode_error("memory set must be nonempty");
    if (!is_prime_u64(ca.p)) throw decode_error("modulus must be prime");
    if (ca.m == 0) throw decode_error("alphabet dimension must be positive");
    if (ca.alpha.size() != ca.S.size()) throw decode_error("one alpha matrix per memory element");
    for (const FFMatrix& a : ca.alpha) {
        if (a.rows != ca.m || a.cols != ca.m || a.p != ca.p)
            throw decode_error("alpha matrices must be m x m over GF(p)");
        for (uint32_t v : a.a)
            if (v >= ca.p) throw decode_error("alpha entry not reduced mod p");
    }
    if (ca.provenance) {
        const CycleSystem& sys = *ca.provenance;
        if (sys.sizeY != ca.m) throw decode_error("provenance sizeY must equal m");
        if (sys.X.size() != ca.S.size())
            throw decode_error("provenance subset count must match memory set");
        for (size_t si = 0; si < ca.S.size(); ++si)
            for (size_t r = 0; r < ca.m; ++r) {
                if (sys.X[si].test(r)) continue;
                for (size_t c = 0; c < ca.m; ++c)
                    if (ca.alpha[si].at(r, c))
                        throw decode_error("alpha row outside X_s must be zero");
            }
    }
}

// Second output row zero: patterns with nontrivial second coordinate
// are Gardens of Eden. The three first rows are pairwise independent,
// so any two of the local kernels meet trivially; taking g of maximal
// length in a support and s away from its first letter pins phi(g) to
// such a pairwise intersection, hence the kernel on finitely supported
// configurations is zero (no mutually erasable patterns). With
// alpha_z = alpha_y the x-initial case escapes that argument and
// (-delta_xy - delta_xz, delta_id) really is a kernel element, so the
// z map must read both coordinates.
LinearCA muller_ca(uint32_t p) {
    GroupCtx ctx = GroupCtx::w3();
    LinearCA ca;
    ca.ctx = ctx;
    ca.S = generator_set(ctx);
    ca.p = p;
    ca.m = 2;
    FFMatrix ax = make_matrix(p, 2, 2);
    ax.at(0, 0) = 1;
    FFMatrix ay = make_matrix(p, 2, 2);
    ay.at(0, 1) = 1;
    FFMatrix az = make_matrix(p, 2, 2);
    az.at(0, 0) = 1;
    az.at(0, 1) = 1;
    ca.alpha = {ax, ay, az};
    validate_ca(ca);
    return ca;
}

LinearCA identity_ca(const GroupCtx& ctx, uint32_t p, size_t m) {
    LinearCA ca;
    ca.ctx = ctx;
    ca.S = make_element_set({identity(ctx)});
    ca.p = p;
    ca.m = m;
    ca.alpha = {ff_identity(p, m)};
    validate_ca(ca);
    return ca;
}

Config make_config(std::vector<std::pair<Word, std::vector<uint32_t>>> entries, uint32_t p) {
    Config phi;
    for (auto& [g, v] : entries) {
        bool nonzero = false;
        for (uint32_t& x : v) {
            x %= p;
            if (x) nonzero = true;
        }
        if (!nonzero) continue;
        auto [it, fresh] = phi.cells.emplace(g, v);
        if (!fresh) throw decode_error("duplicate configuration entry");
    }
    return phi;
}

bool config_is_zero(const Config& phi) { return phi.cells.empty(); }

ElementSet config_support(const Config& phi) {
    std::vector<Word> ws;
    ws.reserve(phi.cells.size());
    for (const auto& [g, v] : phi.cells) ws.push_back(g);
    return make_element_set(std::move(ws));
}

Config config_add(uint32_t p, const Config& a, const Config& b) {
    Config out = a;
    for (const auto& [g, v] : b.cells) {
        auto it = out.cells.find(g);
        if (it == out.cells.end()) {
            out.cells[g] = v;
            continue;
        }
        bool nonzero = false;
        for (size_t i = 0; i < v.size(); ++i) {
            it->second[i] = ff_add(p, it->second[i], v[i]);
            if (it->second[i]) nonzero = true;
        }
        if (!nonzero) out.cells.erase(it);
    }
    return out;
}

Config config_scale(uint32_t p, uint32_t lambda, const Config& a) {
    Config out;
    lambda %= p;
    if (!lambda) return out;
    for (const auto& [g, v] : a.cells) {
        std::vector<uint32_t> w(v.size());
        for (size_t i = 0; i < v.size(); ++i) w[i] = ff_mul(p, lambda, v[i]);
        out.cells[g] = std::move(w);
    }
    return out;
}

std::vector<uint32_t> config_at(const Config& phi, const Word& g, size_t m) {
    auto it = phi.cells.find(g);
    if (it == phi.cells.end()) return std::vector<uint32_t>(m, 0);
    return it->second;
}

Pattern pattern_from_config(const Config& phi, const ElementSet& window, size_t m) {
    Pattern q;
    q.window = window;
    q.values.reserve(window.size());
    for (const Word& g : window.elems) q.values.push_back(config_at(phi, g, m));
    return q;
}

bool pattern_is_zero(const Pattern& q) {
    for (const auto& v : q.values)
        for (uint32_t x : v)
            if (x) return false;
    return true;
}

Config apply(const LinearCA& ca, const Config& phi) {
    for (const auto& [g, v] : phi.cells)
        if (v.size() != ca.m) throw decode_error("configuration dimension mismatch");
    // Theta(phi)(g) can be nonzero only when some s g hits the support,
    // i.e. g in S^-1 supp(phi).
    Config out;
    for (const auto& [h, v] : phi.cells) {
        for (size_t si = 0; si < ca.S.size(); ++si) {
            Word g = mul(ca.ctx, inv(ca.ctx, ca.S[si]), h);
            auto it = out.cells.find(g);
            if (it == out.cells.end())
                it = out.cells.emplace(g, std::vector<uint32_t>(ca.m, 0)).first;
            std::vector<uint32_t> add = matvec(ca.alpha[si], v);
            for (size_t i = 0; i < ca.m; ++i) it->second[i] = ff_add(ca.p, it->second[i], add[i]);
        }
    }
    for (auto it = out.cells.begin(); it != out.cells.end();) {
        bool nonzero = false;
        for (uint32_t x : it->second)
            if (x) {
                nonzero = true;
                break;
            }
        it = nonzero ? std::next(it) : out.cells.erase(it);
    }
    return out;
}

FFMatrix image_map(const LinearCA& ca, const ElementSet& w) {
    if (w.empty()) throw decode_error("image_map needs a nonempty window");
    ElementSet sw = set_product(ca.ctx, ca.S, w);
    FFMatrix out = make_matrix(ca.p, ca.m * w.size(), ca.m * sw.size());
    for (size_t wi = 0; wi < w.size(); ++wi)
        for (size_t si = 0; si < ca.S.size(); ++si) {
            size_t hi = *sw.index_of(mul(ca.ctx, ca.S[si], w[wi]));
            for (size_t r = 0; r < ca.m; ++r)
                for (size_t c = 0; c < ca.m; ++c) {
                    uint32_t v = ca.alpha[si].at(r, c);
                    if (v)
                        out.at(wi * ca.m + r, hi * ca.m + c) =
                            ff_add(ca.p, out.at(wi * ca.m + r, hi * ca.m + c), v);
                }
        }
    return out;
}

std::vector<uint32_t> flatten_on(const Config& phi, const ElementSet& w, size_t m) {
    std::vector<uint32_t> out;
    out.reserve(w.size() * m);
    for (const Word& g : w.elems) {
        std::vector<uint32_t> v = config_at(phi, g, m);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

GRMatrix to_groupring_matrix(const LinearCA& ca) {
    GRMatrix m = gr_matrix(ca.p, ca.m, ca.m);
    for (size_t si = 0; si < ca.S.size(); ++si)
        for (size_t i = 0; i < ca.m; ++i)
            for (size_t j = 0; j < ca.m; ++j) {
                uint32_t v = ca.alpha[si].at(i, j);
                if (v)
                    m.at(i, j) = gr_add(m.at(i, j), gr_monomial(ca.ctx, ca.p, ca.S[si], v));
            }
    return m;
}

Config gr_matrix_action(const GroupCtx& ctx, const GRMatrix& m, const Config& phi) {
    size_t dim = m.cols;
    for (const auto& [g, v] : phi.cells)
        if (v.size() != dim) throw decode_error("configuration dimension mismatch");
    Config out;
    for (const auto& [g, v] : phi.cells)
        for (size_t i = 0; i < m.rows; ++i)
            for (size_t j = 0; j < dim; ++j) {
                if (!v[j]) continue;
                for (const auto& [h, c] : m.at(i, j).terms) {
                    // c * phi_j(g) feeds output position h^-1 g.
                    Word gp = mul(ctx, inv(ctx, h), g);
                    auto it = out.cells.find(gp);
                    if (it == out.cells.end())
                        it = out.cells.emplace(gp, std::vector<uint32_t>(m.rows, 0)).first;
                    it->second[i] = ff_add(m.p, it->second[i], ff_mul(m.p, c, v[j]));
                }
            }
    for (auto it = out.cells.begin(); it != out.cells.end();) {
        bool nonzero = false;
        for (uint32_t x : it->second)
            if (x) {
                nonzero = true;
                break;
            }
        it = nonzero ? std::next(it) : out.cells.erase(it);
    }
    return out;
}

}  // namespace eden
