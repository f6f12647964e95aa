#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace eden {

using Rat = mpq_class;
using Int = mpz_class;

// Canonicalized rational from a numerator/denominator pair.
Rat make_rat(long num, long den);

// Parses "p/q" or "p" (optionally signed). Throws decode_error on junk
// or zero denominator.
Rat rat_from_string(std::string_view s);

// Canonical "p/q" form; integers render without the "/q" part.
std::string rat_to_string(const Rat& q);

// H_n = 1 + 1/2 + ... + 1/n, exact.
Rat harmonic(uint64_t n);

// floor/ceil of a rational as an Int.
Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);

// Certified enclosure of the natural logarithm of a positive rational.
// Both bounds are exact rationals with lower <= ln(x) <= upper.
struct LnBounds {
    Rat lower;
    Rat upper;
};

// Enclosure via the atanh series ln(x) = 2*atanh((x-1)/(x+1)) after
// range reduction by powers of two. `terms` controls series length;
// the defaults give far more slack than any caller here needs.
LnBounds ln_bounds(const Rat& x, unsigned terms = 24);

}  // namespace eden
