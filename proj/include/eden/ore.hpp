#pragma once

#include <cstdint>
#include <optional>

#include "eden/analysis.hpp"
#include "eden/ca.hpp"
#include "eden/groupring.hpp"
#include "eden/rational.hpp"

namespace eden {

// Smallest box F = {0..N-1}^rank with #(sprime * F) < ratio * #F.
// FreeAbelian carriers only; ratio must exceed 1; boxes larger than
// max_box elements are refused.
ElementSet folner_set(const GroupCtx& ctx, const ElementSet& sprime, const Rat& ratio,
                      uint64_t max_box = 4096);

struct OreSolution {
    GRElem b;
    GRElem t;
    ElementSet box;  // common support box of b and t
};

// Solves a*t = b*s with t != 0, both sides supported in a Folner box
// for supp(a) u supp(s). The returned identity is re-verified by
// convolution; a verification mismatch is a logic_error, not a result.
OreSolution ore_solve(const GroupCtx& ctx, const GRElem& a, const GRElem& s,
                      uint64_t max_box = 4096);

struct FailureWitness {
    GRMatrix M;
    // Smallest identically-zero row index, absent when every row has a
    // nonzero entry (then the matrix is not a failure witness).
    std::optional<size_t> zero_row;
};

FailureWitness failure_witness(const LinearCA& ca);

// Kernel search at radius r; nullopt certifies that no nonzero kernel
// configuration is supported inside ball(r).
std::optional<MepPair> injectivity_report(const LinearCA& ca, int r);

}  // namespace eden
