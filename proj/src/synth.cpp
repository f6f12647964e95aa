#include "eden/synth.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "eden/common.hpp"
#include "eden/prng.hpp"

namespace eden {

namespace {

uint64_t factorial(int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
    return f;
}

Rat rat_pow(const Rat& x, int k) {
    Rat r(1);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

// Subsets of {0..n-1} containing s with the given size, as bitmasks in
// increasing numeric order.
std::vector<uint32_t> subsets_through(int n, int s, int size) {
    std::vector<uint32_t> out;
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask)
        if ((mask & (uint32_t{1} << s)) && __builtin_popcount(mask) == size) out.push_back(mask);
    return out;
}

FFMatrix row_select(const FFMatrix& a, const boost::dynamic_bitset<>& rows) {
    FFMatrix out = make_matrix(a.p, rows.count(), a.cols);
    size_t r = 0;
    for (size_t b = rows.find_first(); b != boost::dynamic_bitset<>::npos;
         b = rows.find_next(b), ++r)
        std::copy(a.a.begin() + b * a.cols, a.a.begin() + (b + 1) * a.cols,
                  out.a.begin() + r * out.cols);
    return out;
}

struct VectorPlan {
    std::vector<int> sizes;                        // by coordinate s
    std::vector<size_t> order;                     // processing order, ascending t
    std::vector<std::vector<uint32_t>> choices;    // subsets per processing slot
    uint64_t families = 1;
    std::string digest;
};

VectorPlan make_vector_plan(const CycleSystem& sys, const std::vector<int>& sizes) {
    int n = sys.n;
    VectorPlan vp;
    vp.sizes = sizes;
    vp.order.resize(sizes.size());
    for (size_t s = 0; s < sizes.size(); ++s) vp.order[s] = s;
    std::stable_sort(vp.order.begin(), vp.order.end(),
                     [&](size_t a, size_t b) { return sizes[a] < sizes[b]; });
    uint64_t h = 0xcbf29ce484222325ull;
    std::string blob;
    for (size_t slot = 0; slot < vp.order.size(); ++slot) {
        size_t s = vp.order[slot];
        vp.choices.push_back(subsets_through(n, static_cast<int>(s), sizes[s]));
        vp.families *= vp.choices.back().size();
        blob += std::to_string(s) + ":" + std::to_string(sizes[s]);
        for (uint32_t mask : vp.choices.back()) blob += "," + std::to_string(mask);
        blob += ";";
    }
    vp.digest = hex64(fnv1a64(blob, h));
    return vp;
}

// Intersects the running kernel basis with ker of the X_{s,T} rows of
// maps[s]. An empty `basis` matrix stands for the full space.
FFMatrix shrink_basis(const CycleSystem& sys, const std::vector<FFMatrix>& maps, size_t s,
                      uint32_t mask, const FFMatrix& basis, bool basis_is_full) {
    FFMatrix a = row_select(maps[s], xiI_bitset(sys, static_cast<int>(s), mask));
    FFMatrix c = basis_is_full ? a : matmul(a, basis);
    std::vector<std::vector<uint32_t>> w = kernel_basis(c);
    FFMatrix wm = columns_matrix(maps[s].p, c.cols, w);
    return basis_is_full ? wm : matmul(basis, wm);
}

// Depth-first sweep of one ordered size vector with shared prefix
// intersections; a prefix that already hits dimension zero certifies
// every completion. Returns the first failing family in canonical
// order, if any.
std::optional<FailingFamily> sweep_vector(const CycleSystem& sys,
                                          const std::vector<FFMatrix>& maps, const VectorPlan& vp,
                                          uint64_t& passed) {
    size_t n = vp.sizes.size();
    std::vector<uint32_t> picked(n, 0);

    struct Frame {
        FFMatrix basis;
        bool full = true;
    };

    std::optional<FailingFamily> failure;
    auto rec = [&](auto&& self, size_t slot, const Frame& frame) -> bool {
        if (!frame.full && frame.basis.cols == 0) {
            uint64_t rest = 1;
            for (size_t i = slot; i < n; ++i) rest *= vp.choices[i].size();
            passed += rest;
            return false;
        }
        if (slot == n) {
            FailingFamily ff;
            ff.masks.assign(n, 0);
            for (size_t i = 0; i < n; ++i) ff.masks[vp.order[i]] = picked[i];
            ff.kernel_dim = frame.basis.cols;
            failure = std::move(ff);
            return true;
        }
        size_t s = vp.order[slot];
        for (uint32_t mask : vp.choices[slot]) {
            picked[slot] = mask;
            Frame next{shrink_basis(sys, maps, s, mask, frame.basis, frame.full), false};
            if (self(self, slot + 1, next)) return true;
        }
        return false;
    };
    rec(rec, 0, Frame{});
    return failure;
}

}  // namespace

void validate_spec(const SynthesisSpec& spec) {
    if (spec.S0.size() == 0) throw std::invalid_argument("synthesis spec: empty S0");
    if (!(spec.epsilon > 0)) throw std::invalid_argument("synthesis spec: epsilon must be positive");
    if (!(spec.c > 1)) throw std::invalid_argument("synthesis spec: c must exceed 1");
    if (spec.p_ladder.empty()) throw std::invalid_argument("synthesis spec: empty prime ladder");
    for (size_t i = 0; i < spec.p_ladder.size(); ++i) {
        if (!is_prime_u64(spec.p_ladder[i]))
            throw std::invalid_argument("synthesis spec: ladder entry is not prime");
        if (spec.p_ladder[i] > spec.max_prime)
            throw std::invalid_argument("synthesis spec: ladder exceeds max prime");
        if (i > 0 && spec.p_ladder[i] <= spec.p_ladder[i - 1])
            throw std::invalid_argument("synthesis spec: ladder must ascend");
    }
    if (spec.threads < 1) throw std::invalid_argument("synthesis spec: threads must be >= 1");
}

PlanResult plan(const SynthesisSpec& spec) {
    validate_spec(spec);
    Rat base = Rat(1) + spec.epsilon;
    Rat ln_upper = ln_bounds(Rat(static_cast<unsigned long>(spec.S0.size()))).upper;
    for (int k = 1; k <= 64; ++k) {
        if (rat_pow(base, k) > Rat(1) + Rat(k) * ln_upper) {
            PlanResult pr;
            pr.k = k;
            pr.S = power_set_product(spec.ctx, spec.S0, k);
            pr.n = pr.S.size();
            pr.theta = rat_pow(spec.c, k);
            return pr;
        }
    }
    throw resource_cap_error("plan: no k <= 64 satisfies (1+epsilon)^k > 1 + k ln #S0");
}

std::vector<FFMatrix> choose_maps(const CycleSystem& sys, uint32_t p, uint64_t seed) {
    std::vector<FFMatrix> maps;
    maps.reserve(sys.X.size());
    for (size_t s = 0; s < sys.X.size(); ++s) {
        SplitMix64 rng(derive_seed(seed, "choose-maps", s));
        FFMatrix a = make_matrix(p, sys.sizeY, sys.sizeY);
        for (size_t b = sys.X[s].find_first(); b != boost::dynamic_bitset<>::npos;
             b = sys.X[s].find_next(b))
            for (size_t j = 0; j < a.cols; ++j)
                a.at(b, j) = static_cast<uint32_t>(rng.uniform_below(p));
        maps.push_back(std::move(a));
    }
    return maps;
}

uint64_t family_row_sum(const CycleSystem& sys, const std::vector<int>& sizes) {
    uint64_t nf = factorial(sys.n);
    uint64_t sum = 0;
    for (int t : sizes) {
        if (t < 1 || t > sys.n) throw std::invalid_argument("family_row_sum: size out of range");
        sum += sys.k * nf / static_cast<uint64_t>(t);
    }
    return sum;
}

std::vector<std::vector<int>> maximal_qualifying_vectors(const CycleSystem& sys) {
    int n = sys.n;
    if (n > 6) throw resource_cap_error("maximal_qualifying_vectors: n > 6");
    uint64_t nf = factorial(n);
    auto row = [&](int t) { return sys.k * nf / static_cast<uint64_t>(t); };

    std::vector<std::vector<int>> out;
    std::vector<int> t(static_cast<size_t>(n), 1);
    for (;;) {
        uint64_t sum = 0;
        for (int x : t) sum += row(x);
        if (sum >= sys.sizeY) {
            bool maximal = true;
            for (int i = 0; i < n && maximal; ++i)
                if (t[i] < n && sum - row(t[i]) + row(t[i] + 1) >= sys.sizeY) maximal = false;
            if (maximal) out.push_back(t);
        }
        int i = 0;
        while (i < n && ++t[i] > n) t[i++] = 1;
        if (i == n) break;
    }
    return out;
}

VerifyResult verify_inj(const CycleSystem& sys, const std::vector<FFMatrix>& maps,
                        const VerifyOptions& opt) {
    if (maps.size() != sys.X.size()) throw std::invalid_argument("verify_inj: map count mismatch");
    for (const FFMatrix& a : maps)
        if (a.rows != sys.sizeY || a.cols != sys.sizeY)
            throw std::invalid_argument("verify_inj: map shape mismatch");
    auto t0 = std::chrono::steady_clock::now();

    InjCertificate cert;
    cert.n = sys.n;
    cert.k = sys.k;
    cert.sizeY = sys.sizeY;
    cert.p = maps.empty() ? 2 : maps[0].p;
    cert.seed = opt.seed;
    cert.probabilistic = !opt.certified;

    std::vector<VectorPlan> plans;
    for (const std::vector<int>& v : maximal_qualifying_vectors(sys))
        plans.push_back(make_vector_plan(sys, v));
    for (const VectorPlan& vp : plans)
        cert.maximal_family_descriptors.push_back({vp.sizes, vp.digest, vp.families});

    std::optional<FailingFamily> failure;
    uint64_t passed = 0;

    if (opt.certified) {
        size_t nthreads = std::min<size_t>(static_cast<size_t>(opt.threads), plans.size());
        if (nthreads <= 1) {
            for (const VectorPlan& vp : plans) {
                failure = sweep_vector(sys, maps, vp, passed);
                if (failure) break;
            }
        } else {
            std::atomic<size_t> next{0};
            std::atomic<size_t> first_bad{plans.size()};
            std::mutex mtx;
            std::vector<std::pair<size_t, FailingFamily>> bad;
            std::vector<uint64_t> per_vector(plans.size(), 0);
            auto worker = [&]() {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= plans.size()) return;
                    // Vectors past the earliest failure cannot change
                    // the canonical outcome.
                    if (i > first_bad.load()) continue;
                    std::optional<FailingFamily> f = sweep_vector(sys, maps, plans[i], per_vector[i]);
                    if (f) {
                        std::lock_guard<std::mutex> lk(mtx);
                        bad.emplace_back(i, *f);
                        size_t cur = first_bad.load();
                        while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
                        }
                    }
                }
            };
            std::vector<std::thread> pool;
            for (size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
            for (std::thread& th : pool) th.join();
            std::sort(bad.begin(), bad.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (!bad.empty()) failure = bad.front().second;
            for (uint64_t c : per_vector) passed += c;
        }
    } else {
        // All-singletons family first, then a seeded sample of maximal
        // families.
        std::vector<std::vector<uint32_t>> picks;
        std::vector<uint32_t> singles(static_cast<size_t>(sys.n));
        for (int s = 0; s < sys.n; ++s) singles[static_cast<size_t>(s)] = uint32_t{1} << s;
        picks.push_back(singles);
        SplitMix64 rng(derive_seed(opt.seed, "verify-sample", 0));
        for (uint64_t i = 0; i < opt.sample_count && !plans.empty(); ++i) {
            const VectorPlan& vp = plans[rng.uniform_below(plans.size())];
            std::vector<uint32_t> fam(vp.sizes.size(), 0);
            for (size_t slot = 0; slot < vp.order.size(); ++slot)
                fam[vp.order[slot]] = vp.choices[slot][rng.uniform_below(vp.choices[slot].size())];
            picks.push_back(std::move(fam));
        }
        for (const std::vector<uint32_t>& fam : picks) {
            FFMatrix basis;
            bool full = true;
            for (size_t s = 0; s < fam.size() && (full || basis.cols > 0); ++s) {
                basis = shrink_basis(sys, maps, s, fam[s], basis, full);
                full = false;
            }
            if (basis.cols > 0) {
                failure = FailingFamily{fam, basis.cols};
                break;
            }
            ++passed;
        }
    }

    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    if (failure) return {std::nullopt, failure};
    cert.families_checked = passed;
    cert.all_kernel_dims_zero = true;
    cert.wall_time = secs;
    return {cert, std::nullopt};
}

SynthesisResult synthesize(const SynthesisSpec& spec) {
    PlanResult pl = plan(spec);
    if (pl.n == 0 || pl.n > static_cast<size_t>(8))
        throw resource_cap_error("synthesize: #S out of the supported range");
    CycleSystem sys = augment(build_cycle_system(static_cast<int>(pl.n)), pl.theta);

    std::string report;
    for (uint32_t p : spec.p_ladder) {
        uint64_t fails = 0;
        for (uint64_t r = 0; r < 8; ++r) {
            uint64_t attempt_seed = derive_seed(spec.seed, "synth-attempt", (uint64_t{p} << 8) | r);
            std::vector<FFMatrix> maps = choose_maps(sys, p, attempt_seed);
            VerifyOptions vo;
            vo.certified = spec.certified;
            vo.sample_count = spec.sample_count;
            vo.seed = attempt_seed;
            vo.threads = spec.threads;
            VerifyResult res = verify_inj(sys, maps, vo);
            if (res.certificate) {
                InjCertificate cert = *res.certificate;
                cert.p = p;
                cert.seed = attempt_seed;
                LinearCA ca;
                ca.ctx = spec.ctx;
                ca.S = pl.S;
                ca.p = p;
                ca.m = sys.sizeY;
                ca.alpha = std::move(maps);
                ca.provenance = sys;
                validate_ca(ca);
                return {std::move(ca), std::move(cert)};
            }
            ++fails;
        }
        report += " p=" + std::to_string(p) + ":" + std::to_string(fails) + "/8";
    }
    throw resource_cap_error("synthesize: prime ladder exhausted;" + report);
}

SynthesisSpec preset_tree5(uint64_t seed, const std::vector<uint32_t>& ladder) {
    SynthesisSpec spec;
    spec.ctx = GroupCtx::w5();
    spec.S0 = generator_set(spec.ctx);
    spec.epsilon = Rat(2);
    spec.c = Rat(3);
    spec.p_ladder = ladder;
    spec.seed = seed;
    return spec;
}

}  // namespace eden
