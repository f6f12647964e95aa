#include "eden/analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "eden/common.hpp"

namespace eden {

namespace {

// Witness construction shared by the GOE searches: from the canonical
// cokernel basis pick a unit vector if one appears (it does for the
// presets), otherwise a unit vector meeting the first basis vector.
std::optional<std::vector<uint32_t>> cokernel_witness(const FFMatrix& m) {
    std::vector<std::vector<uint32_t>> coker = kernel_basis(transpose(m));
    if (coker.empty()) return std::nullopt;
    for (const auto& u : coker) {
        size_t nonzero = 0, last = 0;
        for (size_t j = 0; j < u.size(); ++j)
            if (u[j] != 0) { ++nonzero; last = j; }
        if (nonzero == 1 && u[last] == 1) return u;
    }
    const auto& u = coker.front();
    std::vector<uint32_t> q(u.size(), 0);
    for (size_t j = 0; j < u.size(); ++j)
        if (u[j] != 0) { q[j] = 1; break; }
    return q;
}

Pattern pattern_from_flat(const ElementSet& w, size_t m, const std::vector<uint32_t>& flat) {
    Pattern q;
    q.window = w;
    q.values.resize(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        q.values[i] = std::vector<uint32_t>(flat.begin() + i * m, flat.begin() + (i + 1) * m);
    return q;
}

// Rows of a restricted to the set bits of rows.
FFMatrix row_select(const FFMatrix& a, const boost::dynamic_bitset<>& rows) {
    FFMatrix out = make_matrix(a.p, rows.count(), a.cols);
    size_t r = 0;
    for (size_t b = rows.find_first(); b != boost::dynamic_bitset<>::npos;
         b = rows.find_next(b), ++r)
        std::copy(a.a.begin() + b * a.cols, a.a.begin() + (b + 1) * a.cols,
                  out.a.begin() + r * out.cols);
    return out;
}

}  // namespace

std::optional<Pattern> goe_window(const LinearCA& ca, const ElementSet& w) {
    validate_ca(ca);
    if (w.size() == 0) throw std::invalid_argument("goe_window: empty window");
    ElementSet sw = set_product(ca.ctx, ca.S, w);
    uint64_t rows = ca.m * w.size(), cols = ca.m * sw.size();
    if (rows * cols > 50000000ull) throw resource_cap_error("goe_window: matrix cap exceeded");
    FFMatrix m = image_map(ca, w);
    std::optional<std::vector<uint32_t>> q = cokernel_witness(m);
    if (!q) return std::nullopt;
    return pattern_from_flat(w, ca.m, *q);
}

std::optional<Pattern> goe_unit_witness(const LinearCA& ca) {
    return goe_window(ca, make_element_set({identity(ca.ctx)}));
}

std::optional<MepPair> mep_search(const LinearCA& ca, int r, uint64_t dense_work_cap) {
    validate_ca(ca);
    if (r < 0) throw std::invalid_argument("mep_search: negative radius");
    ElementSet b = ball(ca.ctx, r);
    ElementSet w = set_product(ca.ctx, inv_set(ca.ctx, ca.S), b);
    size_t m = ca.m;

    // Coupling sets: which cells of B feed the equation at each site.
    std::vector<std::vector<std::pair<size_t, size_t>>> couplings(w.size());
    for (size_t gi = 0; gi < w.size(); ++gi)
        for (size_t si = 0; si < ca.S.size(); ++si) {
            std::optional<size_t> hi = b.index_of(mul(ca.ctx, ca.S[si], w[gi]));
            if (hi) couplings[gi].emplace_back(si, *hi);
        }

    uint64_t rows = m * w.size(), cols = m * b.size();
    std::optional<std::vector<uint32_t>> sol;
    if (rows * cols <= 50000000ull && rows * cols * std::min(rows, cols) <= dense_work_cap) {
        FFMatrix sys = make_matrix(ca.p, rows, cols);
        for (size_t gi = 0; gi < w.size(); ++gi)
            for (const auto& [si, hi] : couplings[gi]) {
                const FFMatrix& al = ca.alpha[si];
                for (size_t i = 0; i < m; ++i)
                    for (size_t j = 0; j < m; ++j)
                        sys.set(gi * m + i, hi * m + j, sys.at(gi * m + i, hi * m + j) + al.at(i, j));
            }
        std::vector<std::vector<uint32_t>> ker = kernel_basis(sys);
        if (!ker.empty()) sol = ker.front();
    } else {
        // Sites coupled to a single cell pin that cell into a kernel:
        // fold them into per-cell subspaces V_h first, then solve the
        // remaining (much smaller) coupled system over coordinates in
        // those subspaces.
        std::vector<std::vector<size_t>> pinned(b.size());
        for (size_t gi = 0; gi < w.size(); ++gi)
            if (couplings[gi].size() == 1)
                pinned[couplings[gi][0].second].push_back(couplings[gi][0].first);

        std::vector<FFMatrix> v(b.size());
        std::vector<size_t> off(b.size() + 1, 0);
        for (size_t hi = 0; hi < b.size(); ++hi) {
            if (pinned[hi].empty()) {
                v[hi] = ff_identity(ca.p, m);
            } else {
                std::vector<FFMatrix> blocks;
                for (size_t si : pinned[hi]) blocks.push_back(ca.alpha[si]);
                v[hi] = columns_matrix(ca.p, m, intersect_kernels(blocks));
            }
            off[hi + 1] = off[hi] + v[hi].cols;
        }
        size_t dim = off[b.size()];
        if (dim > 0) {
            std::vector<size_t> coupled;
            for (size_t gi = 0; gi < w.size(); ++gi)
                if (couplings[gi].size() >= 2) coupled.push_back(gi);
            FFMatrix red = make_matrix(ca.p, m * coupled.size(), dim);
            for (size_t ei = 0; ei < coupled.size(); ++ei)
                for (const auto& [si, hi] : couplings[coupled[ei]]) {
                    if (v[hi].cols == 0) continue;
                    FFMatrix blk = matmul(ca.alpha[si], v[hi]);
                    for (size_t i = 0; i < m; ++i)
                        for (size_t j = 0; j < blk.cols; ++j)
                            red.set(ei * m + i, off[hi] + j,
                                    red.at(ei * m + i, off[hi] + j) + blk.at(i, j));
                }
            std::vector<std::vector<uint32_t>> ker = kernel_basis(red);
            if (!ker.empty()) {
                const auto& wv = ker.front();
                std::vector<uint32_t> flat(m * b.size(), 0);
                for (size_t hi = 0; hi < b.size(); ++hi) {
                    if (v[hi].cols == 0) continue;
                    std::vector<uint32_t> coords(wv.begin() + off[hi], wv.begin() + off[hi + 1]);
                    std::vector<uint32_t> cell = matvec(v[hi], coords);
                    std::copy(cell.begin(), cell.end(), flat.begin() + hi * m);
                }
                sol = flat;
            }
        }
    }

    if (!sol) return std::nullopt;
    MepPair pair;
    pair.phi1 = pattern_from_flat(b, m, *sol);
    pair.phi2 = pattern_from_flat(b, m, std::vector<uint32_t>(m * b.size(), 0));
    return pair;
}

std::map<Word, Rat> rho_table(const GroupCtx& ctx, const ElementSet& s, const ElementSet& f) {
    std::vector<Word> sf;
    std::vector<ElementSet> translates(s.size());
    for (size_t si = 0; si < s.size(); ++si) {
        std::vector<Word> tf;
        tf.reserve(f.size());
        for (size_t fi = 0; fi < f.size(); ++fi) tf.push_back(mul(ctx, s[si], f[fi]));
        sf.insert(sf.end(), tf.begin(), tf.end());
        translates[si] = make_element_set(std::move(tf));
    }
    std::map<Word, Rat> rho;
    for (const Word& g : make_element_set(std::move(sf)).elems) {
        // Membership counts translate sets, not (s, f) pairs.
        unsigned long count = 0;
        for (const ElementSet& tf : translates) count += tf.contains(g) ? 1 : 0;
        rho.emplace(g, Rat(1) / Rat(count));
    }
    return rho;
}

std::optional<PreinjCertificate> preinj_certificate(const LinearCA& ca, const ElementSet& f_set) {
    validate_ca(ca);
    if (!ca.provenance) throw std::invalid_argument("preinj_certificate: CA has no cycle-system provenance");
    if (f_set.size() == 0) throw std::invalid_argument("preinj_certificate: empty support");
    const CycleSystem& cs = *ca.provenance;
    size_t n = ca.S.size();
    if (n > 32) throw resource_cap_error("preinj_certificate: #S > 32");

    std::vector<ElementSet> s_translates(n);
    for (size_t si = 0; si < n; ++si) {
        std::vector<Word> tf;
        tf.reserve(f_set.size());
        for (size_t fi = 0; fi < f_set.size(); ++fi) tf.push_back(mul(ca.ctx, ca.S[si], f_set[fi]));
        s_translates[si] = make_element_set(std::move(tf));
    }

    for (size_t fi = 0; fi < f_set.size(); ++fi) {
        const Word& f = f_set[fi];
        std::vector<uint32_t> masks(n, 0);
        uint64_t sum_x = 0;
        for (size_t si = 0; si < n; ++si) {
            Word sf = mul(ca.ctx, ca.S[si], f);
            for (size_t ti = 0; ti < n; ++ti)
                if (s_translates[ti].contains(sf)) masks[si] |= (uint32_t{1} << ti);
            sum_x += count_xiI(cs, static_cast<int>(si), masks[si]);
        }
        if (sum_x < cs.sizeY) continue;

        std::vector<FFMatrix> stacked;
        stacked.reserve(n);
        for (size_t si = 0; si < n; ++si)
            stacked.push_back(row_select(ca.alpha[si], xiI_bitset(cs, static_cast<int>(si), masks[si])));
        if (!kernel_basis(vstack(stacked)).empty()) continue;

        PreinjCertificate cert;
        cert.F = f_set;
        cert.f = f;
        cert.rho = rho_table(ca.ctx, ca.S, f_set);
        cert.Tfamily.resize(n);
        for (size_t si = 0; si < n; ++si)
            for (size_t ti = 0; ti < n; ++ti)
                if (masks[si] & (uint32_t{1} << ti)) cert.Tfamily[si].push_back(ti);
        cert.sumX = sum_x;
        cert.kernel_dim = 0;
        return cert;
    }
    return std::nullopt;
}

MMProbe mm_probe(const LinearCA& ca, int r, int w) {
    validate_ca(ca);
    if (ca.ctx.family != GroupFamily::FreeAbelian)
        throw std::invalid_argument("mm_probe: carrier must be FreeAbelian");
    if (r < 0 || w < 0) throw std::invalid_argument("mm_probe: negative bound");
    MMProbe probe;
    probe.radius = r;
    probe.window_bound = w;
    probe.mep_found = mep_search(ca, r).has_value();

    size_t rank = ca.ctx.rank();
    for (int side = 1; !probe.goe_found; ++side) {
        uint64_t size = 1;
        for (size_t i = 0; i < rank; ++i) size *= static_cast<uint64_t>(side);
        if (size > static_cast<uint64_t>(w)) break;
        std::vector<Word> cube;
        std::vector<int64_t> idx(rank, 0);
        for (;;) {
            cube.push_back(word_from_vector(ca.ctx, idx));
            size_t d = 0;
            while (d < rank && ++idx[d] == side) idx[d++] = 0;
            if (d == rank) break;
        }
        probe.goe_found = goe_window(ca, make_element_set(std::move(cube))).has_value();
    }
    probe.conclusive = !probe.mep_found || probe.goe_found;
    return probe;
}

}  // namespace eden
