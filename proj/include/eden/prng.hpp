#pragma once

#include <cstdint>

#include "eden/common.hpp"

namespace eden {

// splitmix64 (Steele, Lea, Flood 2014). Single 64-bit seed, fixed
// gamma 0x9e3779b97f4a7c15. All randomized choices in this library go
// through this generator so a run is reproducible from one seed.
inline constexpr const char* kPrngName = "splitmix64-v1";

class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) via rejection sampling; bound must be > 0.
    uint64_t uniform_below(uint64_t bound) {
        uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            uint64_t v = next();
            if (v < limit) return v % bound;
        }
    }

private:
    uint64_t state_;
};

// Deterministic derived seed for a named subcomputation.
inline uint64_t derive_seed(uint64_t master, const char* label, uint64_t index) {
    uint64_t h = fnv1a64(label, master ^ 0x9e3779b97f4a7c15ull);
    SplitMix64 g(h ^ (index * 0xbf58476d1ce4e5b9ull + 1));
    return g.next();
}

}  // namespace eden
