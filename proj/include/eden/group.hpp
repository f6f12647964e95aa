#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eden/rational.hpp"

namespace eden {

enum class GroupFamily { FreeProductOfCyclics, FreeGroup, FreeAbelian };

std::string family_name(GroupFamily f);
GroupFamily family_from_name(std::string_view name);

// One of three group families with decidable normal forms:
// free products of finite cyclic groups, free groups, free abelian groups.
struct GroupCtx {
    GroupFamily family = GroupFamily::FreeGroup;
    // FreeProductOfCyclics: list of cyclic orders (each >= 2).
    // FreeGroup / FreeAbelian: single entry, the rank (>= 1).
    std::vector<int64_t> params;

    int rank() const;
    // Order of generator i; 0 means infinite order.
    int64_t order_of(int i) const;

    static GroupCtx free_product_of_cyclics(std::vector<int64_t> orders);
    static GroupCtx free_group(int rank);
    static GroupCtx free_abelian(int rank);
    // <x,y,z | x^2, y^2, z^2>, the smallest non-amenable free product here.
    static GroupCtx w3() { return free_product_of_cyclics({2, 2, 2}); }
    // Free product of five involutions; Cayley graph is the 5-regular tree.
    static GroupCtx w5() { return free_product_of_cyclics({2, 2, 2, 2, 2}); }

    bool operator==(const GroupCtx&) const = default;
};

struct Syllable {
    int32_t gen = 0;
    int64_t exp = 0;
    auto operator<=>(const Syllable&) const = default;
};

// Group element in normal form. Free families use the syllable list
// (adjacent generators distinct; cyclic exponents in [1, order), free
// exponents nonzero); FreeAbelian uses the exponent vector. `len` is
// the word length over the standard generators and their inverses.
struct Word {
    std::vector<Syllable> syls;
    std::vector<int64_t> vec;
    int64_t len = 0;

    friend bool operator==(const Word& a, const Word& b) {
        return a.syls == b.syls && a.vec == b.vec;
    }
    // Canonical total order: length first, then lexicographic content.
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (auto c = a.len <=> b.len; c != std::strong_ordering::equal) return c;
        if (auto c = a.syls <=> b.syls; c != std::strong_ordering::equal) return c;
        return a.vec <=> b.vec;
    }
};

Word identity(const GroupCtx& ctx);
bool is_identity(const Word& w);

// Normal form of g_i^exp.
Word generator(const GroupCtx& ctx, int gen, int64_t exp = 1);
// Normal form of an arbitrary syllable string (free families only).
Word word_from_syllables(const GroupCtx& ctx, std::span<const Syllable> raw);
// FreeAbelian element from an exponent vector.
Word word_from_vector(const GroupCtx& ctx, std::vector<int64_t> exps);

Word mul(const GroupCtx& ctx, const Word& a, const Word& b);
Word inv(const GroupCtx& ctx, const Word& a);

// "x1 x3^2 x1" with ^1 implied; identity prints as "e"; FreeAbelian
// prints "[3,-1]". The parser also accepts x/y/z for the first three
// generators and an empty string for the identity.
std::string word_to_string(const GroupCtx& ctx, const Word& w);
Word word_from_string(const GroupCtx& ctx, std::string_view s);
std::string gen_display_name(int i);

// Deduplicated set of Words kept sorted in the canonical order, so a
// set has exactly one representation and element indices are stable.
struct ElementSet {
    std::vector<Word> elems;

    size_t size() const { return elems.size(); }
    bool empty() const { return elems.empty(); }
    bool contains(const Word& w) const;
    std::optional<size_t> index_of(const Word& w) const;
    const Word& operator[](size_t i) const { return elems[i]; }

    bool operator==(const ElementSet&) const = default;
};

ElementSet make_element_set(std::vector<Word> elems);

// All elements of word length <= r, by breadth-first search.
ElementSet ball(const GroupCtx& ctx, int r);

// The standard generators as an ElementSet (no inverses, no identity).
ElementSet generator_set(const GroupCtx& ctx);

// {s * f : s in S, f in F}.
ElementSet set_product(const GroupCtx& ctx, const ElementSet& s, const ElementSet& f);

// S0^k = {s_1 ... s_k : s_i in S0}, products of exactly k factors.
ElementSet power_set_product(const GroupCtx& ctx, const ElementSet& s0, int k);

// {s^-1 : s in S}.
ElementSet inv_set(const GroupCtx& ctx, const ElementSet& s);

// Expansion claims have the affine form #(SF) >= c * #F + b.
struct ExpansionClaim {
    Rat c;
    Rat b;
};

// How expansion_report searches for counterexample sets F.
struct ExpansionSearch {
    enum class Kind { ExhaustiveBall, SampledBall, Explicit };
    Kind kind = Kind::ExhaustiveBall;
    int radius = 1;
    // ExhaustiveBall refuses to enumerate subsets of a ball larger than this.
    size_t max_universe = 26;
    // SampledBall parameters.
    size_t sample_count = 0;
    size_t max_subset_size = 0;
    uint64_t seed = 0;
    // Explicit candidate list.
    std::vector<ElementSet> candidates;
};

struct ExpansionReport {
    ElementSet s;
    ExpansionClaim claim;
    std::string search_description;
    Rat min_slack;        // min over enumerated F of #(SF) - c*#F - b
    ElementSet witness;   // an F attaining min_slack
    uint64_t sets_checked = 0;
    bool exhaustive = false;  // true when every nonempty F <= ball(radius) was checked
};

// Desk-scale check of an expansion claim. min_slack >= 0 means no
// counterexample was found in the enumerated family; it is not a proof
// over all finite F, and the report says exactly what was searched.
ExpansionReport expansion_report(const GroupCtx& ctx, const ElementSet& s,
                                 const ExpansionClaim& claim, const ExpansionSearch& search);

// Preset desk-checked claims: W5 with S = generators satisfies
// #(SF) >= 3#F + 2; W3 with S = {1,x,y,z} satisfies #(SF) >= (4/3)#F.
ExpansionClaim preset_claim_w5();
ExpansionClaim preset_claim_w3();
ElementSet preset_expansion_set(const GroupCtx& ctx);

}  // namespace eden
