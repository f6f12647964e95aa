#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "eden/rational.hpp"

namespace eden {

// Ground set Y indexing the (permutation, cycle) pairs of S_n, with
// one subset X_i per point i of {1..n} (the cycles through i). The
// ground set may be replicated k times with one extra point appended;
// the extra point lies in no X_i.
struct CycleSystem {
    int n = 0;
    uint64_t k = 1;
    uint64_t sizeY = 0;
    std::vector<boost::dynamic_bitset<>> X;
    std::optional<uint64_t> extra_point;

    bool operator==(const CycleSystem& o) const {
        return n == o.n && k == o.k && sizeY == o.sizeY && X == o.X && extra_point == o.extra_point;
    }
};

// Base system for S_n: permutations enumerated in lexicographic order,
// cycles of each permutation ordered by smallest element, fixed points
// counted as 1-cycles; k = 1, no extra point. n is capped at 8.
CycleSystem build_cycle_system(int n);

// #(X_i \ union over j in I\{i} of X_j); I is a bitmask over {0..n-1}
// and must contain i.
uint64_t count_xiI(const CycleSystem& sys, int i, uint32_t I_mask);
boost::dynamic_bitset<> xiI_bitset(const CycleSystem& sys, int i, uint32_t I_mask);

struct CountReport {
    bool ok = true;                       // structural invariants all hold
    std::vector<std::string> violations;  // sorted diagnostics for failures
    bool exhaustive = false;              // every (i, I) pair was checked
    uint64_t pairs_checked = 0;
    // #X_{i,I} >= sizeY / ((1+ln n) #I), decided with a certified
    // rational enclosure of ln n; `certified` is true when even the
    // lower end of the enclosure confirms the bound.
    bool log_bound_holds = true;
    bool log_bound_certified = true;
    std::string log_bound_note;
};

// Checks the CycleSystem invariants: the size identity, #X_i = k*n!,
// extra-point membership, and the intersection counts #X_{i,I} =
// k*n!/#I, exhaustively over all (i, I) for n <= 5 and on a seeded
// sample of pairs for larger n.
CountReport verify_counts(const CycleSystem& sys, uint64_t sample_pairs = 512, uint64_t seed = 0);

// Replicates the ground set k times and appends one extra point, where
// k is minimal with k*(n!*c - sizeY0) >= 1. Requires c > H_n (exact
// comparison) and an unaugmented input. The result satisfies: every
// size vector (t_1..t_n) with sum 1/t_i >= c has sum k*n!/t_i >= sizeY.
CycleSystem augment(const CycleSystem& sys, const Rat& c);

}  // namespace eden
