#include "eden/lemma1.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "eden/common.hpp"
#include "eden/prng.hpp"

namespace eden {

namespace {

uint64_t factorial(int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
    return f;
}

}  // namespace

CycleSystem build_cycle_system(int n) {
    if (n < 1 || n > 8) throw decode_error("cycle system supports 1 <= n <= 8");
    // First pass: count cycles across all permutations.
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    uint64_t total = 0;
    do {
        std::vector<char> visited(static_cast<size_t>(n), 0);
        for (int start = 0; start < n; ++start) {
            if (visited[static_cast<size_t>(start)]) continue;
            for (int j = start; !visited[static_cast<size_t>(j)]; j = perm[static_cast<size_t>(j)])
                visited[static_cast<size_t>(j)] = 1;
            ++total;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    CycleSystem sys;
    sys.n = n;
    sys.k = 1;
    sys.sizeY = total;
    sys.X.assign(static_cast<size_t>(n), boost::dynamic_bitset<>(total));

    std::iota(perm.begin(), perm.end(), 0);
    uint64_t idx = 0;
    do {
        std::vector<char> visited(static_cast<size_t>(n), 0);
        for (int start = 0; start < n; ++start) {
            if (visited[static_cast<size_t>(start)]) continue;
            for (int j = start; !visited[static_cast<size_t>(j)]; j = perm[static_cast<size_t>(j)]) {
                visited[static_cast<size_t>(j)] = 1;
                sys.X[static_cast<size_t>(j)].set(idx);
            }
            ++idx;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sys;
}

boost::dynamic_bitset<> xiI_bitset(const CycleSystem& sys, int i, uint32_t I_mask) {
    if (i < 0 || i >= sys.n || !(I_mask >> i & 1)) throw decode_error("xiI: need i in I");
    boost::dynamic_bitset<> acc = sys.X[static_cast<size_t>(i)];
    for (int j = 0; j < sys.n; ++j)
        if (j != i && (I_mask >> j & 1)) acc -= sys.X[static_cast<size_t>(j)];
    return acc;
}

uint64_t count_xiI(const CycleSystem& sys, int i, uint32_t I_mask) {
    return xiI_bitset(sys, i, I_mask).count();
}

CountReport verify_counts(const CycleSystem& sys, uint64_t sample_pairs, uint64_t seed) {
    CountReport rep;
    const int n = sys.n;
    const uint64_t nfact = factorial(n);
    const uint64_t base = sys.sizeY - (sys.extra_point ? 1 : 0);

    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };

    // Eq. (1) scaled: base part of Y has k * sum_i n!/i points.
    uint64_t expect_base = 0;
    for (int i = 1; i <= n; ++i) expect_base += nfact / static_cast<uint64_t>(i);
    if (base != sys.k * expect_base)
        fail("sizeY mismatch: base " + std::to_string(base) + " != k*sum(n!/i) = " +
             std::to_string(sys.k * expect_base));

    if (sys.X.size() != static_cast<size_t>(n)) fail("wrong number of subsets");
    for (int i = 0; i < n; ++i) {
        if (sys.X[static_cast<size_t>(i)].size() != sys.sizeY) fail("bitset size mismatch");
        if (sys.X[static_cast<size_t>(i)].count() != sys.k * nfact)
            fail("#X_" + std::to_string(i + 1) + " = " +
                 std::to_string(sys.X[static_cast<size_t>(i)].count()) + " != k*n!");
    }
    if (sys.extra_point) {
        if (*sys.extra_point >= sys.sizeY) fail("extra point out of range");
        for (int i = 0; i < n; ++i)
            if (*sys.extra_point < sys.sizeY && sys.X[static_cast<size_t>(i)].test(*sys.extra_point))
                fail("extra point lies in X_" + std::to_string(i + 1));
    }

    // Eq. (2) scaled: #X_{i,I} = k*n!/#I.
    auto check_pair = [&](int i, uint32_t mask) {
        uint64_t got = count_xiI(sys, i, mask);
        uint64_t card = static_cast<uint64_t>(std::popcount(mask));
        uint64_t want = sys.k * nfact / card;
        if (got != want)
            fail("count X_{" + std::to_string(i + 1) + ",I} = " + std::to_string(got) +
                 " != " + std::to_string(want) + " for |I| = " + std::to_string(card));
        ++rep.pairs_checked;
        return got;
    };

    LnBounds ln_n = ln_bounds(Rat(n));
    bool ub_holds = true, lb_holds = true;
    auto check_log_bound = [&](uint64_t count, uint32_t mask) {
        Rat lhs(static_cast<unsigned long>(count));
        Rat size_y(static_cast<unsigned long>(sys.sizeY));
        Rat card(static_cast<unsigned long>(std::popcount(mask)));
        // #X_{i,I} >= sizeY / ((1+ln n) #I), tested at both ends of
        // the ln enclosure.
        if (lhs * (Rat(1) + ln_n.upper) * card < size_y) ub_holds = false;
        if (lhs * (Rat(1) + ln_n.lower) * card < size_y) lb_holds = false;
    };

    if (n <= 5) {
        rep.exhaustive = true;
        for (uint32_t mask = 1; mask < (1u << n); ++mask)
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) check_log_bound(check_pair(i, mask), mask);
    } else {
        SplitMix64 rng(derive_seed(seed, "verify-counts", static_cast<uint64_t>(n)));
        for (uint64_t t = 0; t < sample_pairs; ++t) {
            uint32_t mask = static_cast<uint32_t>(rng.uniform_below((1u << n) - 1)) + 1;
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) members.push_back(i);
            int i = members[rng.uniform_below(members.size())];
            check_log_bound(check_pair(i, mask), mask);
        }
    }

    std::sort(rep.violations.begin(), rep.violations.end());
    rep.log_bound_holds = ub_holds;
    rep.log_bound_certified = lb_holds;
    rep.log_bound_note =
        "ln(n) enclosure width " + rat_to_string(ln_n.upper - ln_n.lower) +
        (lb_holds ? "; bound certified at the lower end"
                  : "; bound holds only against the upper end (not certified)");
    return rep;
}

CycleSystem augment(const CycleSystem& sys, const Rat& c) {
    if (sys.k != 1 || sys.extra_point)
        throw decode_error("augment expects an unaugmented system");
    const uint64_t nfact = factorial(sys.n);
    Rat h = harmonic(static_cast<uint64_t>(sys.n));
    if (c <= h)
        throw decode_error("augmentation impossible: c = " + rat_to_string(c) +
                           " does not exceed H_n = " + rat_to_string(h));
    // Minimal k with k*(n!*c - sizeY0) >= 1; the margin is positive
    // exactly because c > H_n and sizeY0 = n!*H_n.
    Rat margin = Rat(static_cast<unsigned long>(nfact)) * c -
                 Rat(static_cast<unsigned long>(sys.sizeY));
    Int k_int = rat_ceil(Rat(1) / margin);
    if (k_int < 1) k_int = 1;
    if (!k_int.fits_ulong_p()) throw resource_cap_error("replication factor does not fit");
    uint64_t k = k_int.get_ui();
    if (k * sys.sizeY + 1 > 100000000ull)
        throw resource_cap_error("augmented ground set would exceed the size cap");

    CycleSystem out;
    out.n = sys.n;
    out.k = k;
    out.sizeY = k * sys.sizeY + 1;
    out.extra_point = out.sizeY - 1;
    out.X.assign(static_cast<size_t>(sys.n), boost::dynamic_bitset<>(out.sizeY));
    for (int i = 0; i < sys.n; ++i)
        for (uint64_t copy = 0; copy < k; ++copy)
            for (uint64_t b = sys.X[static_cast<size_t>(i)].find_first();
                 b != boost::dynamic_bitset<>::npos;
                 b = sys.X[static_cast<size_t>(i)].find_next(b))
                out.X[static_cast<size_t>(i)].set(copy * sys.sizeY + b);
    return out;
}

}  // namespace eden
