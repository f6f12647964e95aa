#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "eden/ff.hpp"
#include "eden/group.hpp"
#include "eden/groupring.hpp"
#include "eden/lemma1.hpp"

namespace eden {

// Linear cellular automaton: Theta(phi)(g) = sum over s in S of
// alpha_s(phi(s g)), with alphabet A = GF(p)^m.
struct LinearCA {
    GroupCtx ctx;
    ElementSet S;
    uint32_t p = 2;
    size_t m = 0;
    std::vector<FFMatrix> alpha;  // parallel to S.elems
    // Set for synthesized automata; rows of alpha_s outside X_s are
    // zero, and the extra point row is zero in every alpha_s.
    std::optional<CycleSystem> provenance;
};

// Checks the structural invariants, including the provenance row
// condition when present. Throws decode_error on violation.
void validate_ca(const LinearCA& ca);

LinearCA muller_ca(uint32_t p);
LinearCA identity_ca(const GroupCtx& ctx, uint32_t p, size_t m);

// Finitely supported configuration G -> GF(p)^m; zero vectors are
// never stored.
struct Config {
    std::map<Word, std::vector<uint32_t>> cells;

    bool operator==(const Config&) const = default;
};

Config make_config(std::vector<std::pair<Word, std::vector<uint32_t>>> entries, uint32_t p);
bool config_is_zero(const Config& phi);
ElementSet config_support(const Config& phi);
Config config_add(uint32_t p, const Config& a, const Config& b);
Config config_scale(uint32_t p, uint32_t lambda, const Config& a);
// Restriction to a window, kept as an explicit Pattern value.
std::vector<uint32_t> config_at(const Config& phi, const Word& g, size_t m);

// Finite window with one alphabet vector per window element (zeros
// allowed, unlike Config).
struct Pattern {
    ElementSet window;
    std::vector<std::vector<uint32_t>> values;

    bool operator==(const Pattern&) const = default;
};

Pattern pattern_from_config(const Config& phi, const ElementSet& window, size_t m);
bool pattern_is_zero(const Pattern& q);

Config apply(const LinearCA& ca, const Config& phi);

// Matrix of the local map K^(m * #SW) -> K^(m * #W) sending phi|_SW to
// Theta(phi)|_W. Row blocks follow W in canonical order, column blocks
// follow SW, coordinates minor.
FFMatrix image_map(const LinearCA& ca, const ElementSet& w);
// Flatten phi|_W into the column layout used by image_map.
std::vector<uint32_t> flatten_on(const Config& phi, const ElementSet& w, size_t m);

// M = sum over s of alpha_s * s, entrywise: M[i][j] = sum alpha_s[i][j] s.
GRMatrix to_groupring_matrix(const LinearCA& ca);

// The action of a group-ring matrix on configurations matching the CA
// convention: (M . phi)_i(g) = sum_j sum_h M[i][j](h) phi_j(h g).
Config gr_matrix_action(const GroupCtx& ctx, const GRMatrix& m, const Config& phi);

}  // namespace eden
