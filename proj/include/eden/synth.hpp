#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eden/ca.hpp"
#include "eden/group.hpp"
#include "eden/lemma1.hpp"
#include "eden/rational.hpp"

namespace eden {

struct SynthesisSpec {
    GroupCtx ctx;
    ElementSet S0;
    Rat epsilon;
    // Certified affine expansion ratio claimed for S0; #(S0 F) >= c #F.
    // Only the exact rational enters the certified path.
    Rat c;
    std::vector<uint32_t> p_ladder;
    uint64_t seed = 0;
    bool certified = true;
    uint64_t sample_count = 64;
    uint32_t max_prime = 97;
    int threads = 1;
};

// epsilon > 0, c > 1, ladder nonempty, ascending, prime, <= max_prime.
void validate_spec(const SynthesisSpec& spec);

struct PlanResult {
    int k = 1;
    ElementSet S;
    size_t n = 0;
    Rat theta;  // c^k, the exact ratio carried by S = S0^k
};

// Minimal k <= 64 with (1+epsilon)^k > 1 + k ln(#S0), decided with a
// certified upper enclosure of the logarithm; S = power_set_product.
PlanResult plan(const SynthesisSpec& spec);

// One matrix per subset X_s: rows outside X_s zero, rows inside filled
// from a seeded deterministic stream. Same (sys, p, seed) gives
// identical bytes.
std::vector<FFMatrix> choose_maps(const CycleSystem& sys, uint32_t p, uint64_t seed);

struct FamilyDescriptor {
    std::vector<int> sizes;      // ordered size vector (t_s)
    std::string choices_digest;  // digest of the per-coordinate subset lists
    uint64_t families = 0;       // prod C(n-1, t_s - 1)
};

struct InjCertificate {
    int n = 0;
    uint64_t k = 1;
    uint64_t sizeY = 0;
    uint32_t p = 2;
    uint64_t seed = 0;
    uint64_t families_checked = 0;
    std::vector<FamilyDescriptor> maximal_family_descriptors;
    bool all_kernel_dims_zero = false;
    bool probabilistic = false;  // sampled mode
    double wall_time = 0.0;
};

struct FailingFamily {
    std::vector<uint32_t> masks;  // T_s per coordinate, bit t set iff t in T_s
    size_t kernel_dim = 0;
};

struct VerifyOptions {
    bool certified = true;
    uint64_t sample_count = 64;
    uint64_t seed = 0;
    int threads = 1;
};

struct VerifyResult {
    std::optional<InjCertificate> certificate;
    std::optional<FailingFamily> failure;
};

// sum_s k n!/t_s, the row count of the stacked family matrix.
uint64_t family_row_sum(const CycleSystem& sys, const std::vector<int>& sizes);

// All ordered size vectors (t_s) in {1..n}^n with family_row_sum >=
// sizeY that are maximal: every single-coordinate enlargement either
// leaves {1..n} or breaks qualification. Canonically ordered.
std::vector<std::vector<int>> maximal_qualifying_vectors(const CycleSystem& sys);

// Certified mode sweeps every maximal qualifying family (the
// domination rule extends the certificate to all qualifying families);
// sampled mode checks the all-singletons family plus a seeded sample.
// A family whose stacked rows have a nonzero kernel is returned as the
// counterexample instead.
VerifyResult verify_inj(const CycleSystem& sys, const std::vector<FFMatrix>& maps,
                        const VerifyOptions& opt = {});

struct SynthesisResult {
    LinearCA ca;
    InjCertificate certificate;
};

// plan -> build -> augment -> ladder of primes with seed retries.
// Throws resource_cap_error when the ladder is exhausted, with per-p
// failure counts in the message.
SynthesisResult synthesize(const SynthesisSpec& spec);

// The W5 synthesis preset: 5 involutive generators, epsilon = 2, c = 3.
SynthesisSpec preset_tree5(uint64_t seed, const std::vector<uint32_t>& ladder = {2, 3, 5, 7, 11, 13});

}  // namespace eden
