#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "eden/ca.hpp"
#include "eden/rational.hpp"

namespace eden {

// Garden-of-Eden pattern on the single-cell window {identity}: a value
// outside sum_s colspace(alpha_s) when that subspace is proper, none
// otherwise.
std::optional<Pattern> goe_unit_witness(const LinearCA& ca);

// Garden-of-Eden pattern on the window W: a pattern outside the column
// space of image_map(ca, W) when the local map is not onto, none when
// it is. Locality makes a returned pattern unreachable from every
// configuration, finite or not.
std::optional<Pattern> goe_window(const LinearCA& ca, const ElementSet& w);

struct MepPair {
    Pattern phi1;
    Pattern phi2;

    bool operator==(const MepPair&) const = default;
};

// Complete kernel search at radius r: unknowns phi on B = ball(r),
// equations Theta(phi)(g) = 0 for every g in S^-1 B. A nonzero kernel
// element phi yields the mutually erasable pair (phi, 0); mutually
// erasable patterns supported inside B exist iff one is returned.
// Systems whose dense elimination cost exceeds dense_work_cap go
// through an exact single-coupling pre-reduction first.
std::optional<MepPair> mep_search(const LinearCA& ca, int r,
                                  uint64_t dense_work_cap = 200000000ull);

// rho(g) = 1 / #{s in S : g in sF}, tabulated on SF.
std::map<Word, Rat> rho_table(const GroupCtx& ctx, const ElementSet& s, const ElementSet& f);

struct PreinjCertificate {
    ElementSet F;
    Word f;
    std::map<Word, Rat> rho;
    std::vector<std::vector<size_t>> Tfamily;  // T_s = {t : s f in t F}, indices into S
    uint64_t sumX = 0;                         // sum_s #X_{s, T_s}
    size_t kernel_dim = 0;                     // of the stacked X_{s, T_s} rows, always 0
};

// Searches F for an anchor f whose family T_s = {t : s f in t F}
// passes the integer test sum_s #X_{s,T_s} >= sizeY and whose stacked
// alpha rows have zero kernel. A returned certificate proves that no
// configuration with support exactly F lies in the kernel of Theta.
// Requires provenance; returns nullopt when no f in F qualifies.
std::optional<PreinjCertificate> preinj_certificate(const LinearCA& ca, const ElementSet& f_set);

struct MMProbe {
    int radius = 0;
    int window_bound = 0;
    bool mep_found = false;
    bool goe_found = false;
    // False exactly when a kernel element was found but no
    // Garden-of-Eden window within the size bound: both searches are
    // bounded truncations, so that outcome decides nothing.
    bool conclusive = false;
};

// Empirical Moore-Myhill probe on a FreeAbelian carrier: kernel search
// at radius r, Garden-of-Eden search over cube windows of size at most
// w.
MMProbe mm_probe(const LinearCA& ca, int r, int w);

}  // namespace eden
