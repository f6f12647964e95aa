#include "eden/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "eden/common.hpp"
#include "eden/prng.hpp"

namespace eden {

std::string family_name(GroupFamily f) {
    switch (f) {
        case GroupFamily::FreeProductOfCyclics: return "FreeProductOfCyclics";
        case GroupFamily::FreeGroup: return "FreeGroup";
        case GroupFamily::FreeAbelian: return "FreeAbelian";
    }
    throw decode_error("unknown family");
}

GroupFamily family_from_name(std::string_view name) {
    if (name == "FreeProductOfCyclics") return GroupFamily::FreeProductOfCyclics;
    if (name == "FreeGroup") return GroupFamily::FreeGroup;
    if (name == "FreeAbelian") return GroupFamily::FreeAbelian;
    throw decode_error("unknown group family: " + std::string(name));
}

int GroupCtx::rank() const {
    if (family == GroupFamily::FreeProductOfCyclics) return static_cast<int>(params.size());
    return static_cast<int>(params.at(0));
}

int64_t GroupCtx::order_of(int i) const {
    if (i < 0 || i >= rank()) throw decode_error("generator index out of range");
    if (family == GroupFamily::FreeProductOfCyclics) return params[static_cast<size_t>(i)];
    return 0;
}

GroupCtx GroupCtx::free_product_of_cyclics(std::vector<int64_t> orders) {
    if (orders.empty()) throw decode_error("free product needs at least one factor");
    for (int64_t o : orders)
        if (o < 2) throw decode_error("cyclic order must be >= 2");
    return GroupCtx{GroupFamily::FreeProductOfCyclics, std::move(orders)};
}

GroupCtx GroupCtx::free_group(int rank) {
    if (rank < 1) throw decode_error("rank must be >= 1");
    return GroupCtx{GroupFamily::FreeGroup, {rank}};
}

GroupCtx GroupCtx::free_abelian(int rank) {
    if (rank < 1) throw decode_error("rank must be >= 1");
    return GroupCtx{GroupFamily::FreeAbelian, {rank}};
}

namespace {

int64_t syllable_length(const GroupCtx& ctx, const Syllable& s) {
    int64_t ord = ctx.order_of(s.gen);
    if (ord > 0) return std::min(s.exp, ord - s.exp);
    return std::abs(s.exp);
}

Word finish_syllables(const GroupCtx& ctx, std::vector<Syllable> syls) {
    Word w;
    w.syls = std::move(syls);
    for (const Syllable& s : w.syls) w.len += syllable_length(ctx, s);
    return w;
}

Word finish_vector(std::vector<int64_t> vec) {
    Word w;
    w.vec = std::move(vec);
    for (int64_t v : w.vec) w.len += std::abs(v);
    return w;
}

// Stack reduction: appends one syllable, merging with the top and
// cancelling as needed. Keeps `out` in normal form.
void push_syllable(const GroupCtx& ctx, std::vector<Syllable>& out, int32_t gen, int64_t exp) {
    int64_t ord = ctx.order_of(gen);
    if (ord > 0) {
        exp %= ord;
        if (exp < 0) exp += ord;
    }
    if (exp == 0) return;
    if (!out.empty() && out.back().gen == gen) {
        int64_t merged = out.back().exp + exp;
        if (ord > 0) merged %= ord;
        out.pop_back();
        if (merged != 0) out.push_back({gen, merged});
        return;
    }
    out.push_back({gen, exp});
}

}  // namespace

Word identity(const GroupCtx& ctx) {
    if (ctx.family == GroupFamily::FreeAbelian)
        return finish_vector(std::vector<int64_t>(static_cast<size_t>(ctx.rank()), 0));
    return Word{};
}

bool is_identity(const Word& w) { return w.len == 0; }

Word generator(const GroupCtx& ctx, int gen, int64_t exp) {
    if (gen < 0 || gen >= ctx.rank()) throw decode_error("generator index out of range");
    if (ctx.family == GroupFamily::FreeAbelian) {
        std::vector<int64_t> v(static_cast<size_t>(ctx.rank()), 0);
        v[static_cast<size_t>(gen)] = exp;
        return finish_vector(std::move(v));
    }
    std::vector<Syllable> out;
    push_syllable(ctx, out, gen, exp);
    return finish_syllables(ctx, std::move(out));
}

Word word_from_syllables(const GroupCtx& ctx, std::span<const Syllable> raw) {
    if (ctx.family == GroupFamily::FreeAbelian) {
        std::vector<int64_t> v(static_cast<size_t>(ctx.rank()), 0);
        for (const Syllable& s : raw) {
            if (s.gen < 0 || s.gen >= ctx.rank()) throw decode_error("generator index out of range");
            v[static_cast<size_t>(s.gen)] += s.exp;
        }
        return finish_vector(std::move(v));
    }
    std::vector<Syllable> out;
    for (const Syllable& s : raw) {
        if (s.gen < 0 || s.gen >= ctx.rank()) throw decode_error("generator index out of range");
        push_syllable(ctx, out, s.gen, s.exp);
    }
    return finish_syllables(ctx, std::move(out));
}

Word word_from_vector(const GroupCtx& ctx, std::vector<int64_t> exps) {
    if (ctx.family != GroupFamily::FreeAbelian) throw decode_error("exponent vectors are FreeAbelian-only");
    if (exps.size() != static_cast<size_t>(ctx.rank())) throw decode_error("exponent vector has wrong rank");
    return finish_vector(std::move(exps));
}

Word mul(const GroupCtx& ctx, const Word& a, const Word& b) {
    if (ctx.family == GroupFamily::FreeAbelian) {
        std::vector<int64_t> v = a.vec;
        for (size_t i = 0; i < v.size(); ++i) v[i] += b.vec[i];
        return finish_vector(std::move(v));
    }
    std::vector<Syllable> out = a.syls;
    out.reserve(a.syls.size() + b.syls.size());
    for (const Syllable& s : b.syls) push_syllable(ctx, out, s.gen, s.exp);
    return finish_syllables(ctx, std::move(out));
}

Word inv(const GroupCtx& ctx, const Word& a) {
    if (ctx.family == GroupFamily::FreeAbelian) {
        std::vector<int64_t> v = a.vec;
        for (int64_t& x : v) x = -x;
        return finish_vector(std::move(v));
    }
    std::vector<Syllable> out;
    out.reserve(a.syls.size());
    for (auto it = a.syls.rbegin(); it != a.syls.rend(); ++it) {
        int64_t ord = ctx.order_of(it->gen);
        out.push_back({it->gen, ord > 0 ? ord - it->exp : -it->exp});
    }
    return finish_syllables(ctx, std::move(out));
}

std::string gen_display_name(int i) { return "x" + std::to_string(i + 1); }

std::string word_to_string(const GroupCtx& ctx, const Word& w) {
    if (ctx.family == GroupFamily::FreeAbelian) {
        std::string out = "[";
        for (size_t i = 0; i < w.vec.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(w.vec[i]);
        }
        return out + "]";
    }
    if (w.syls.empty()) return "e";
    std::string out;
    for (size_t i = 0; i < w.syls.size(); ++i) {
        if (i) out += " ";
        out += gen_display_name(w.syls[i].gen);
        if (w.syls[i].exp != 1) out += "^" + std::to_string(w.syls[i].exp);
    }
    return out;
}

namespace {

int64_t parse_int64(std::string_view tok) {
    std::string s(tok);
    size_t pos = 0;
    long long v;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw decode_error("bad integer: " + s);
    }
    if (pos != s.size()) throw decode_error("bad integer: " + s);
    return v;
}

Syllable parse_syllable(const GroupCtx& ctx, std::string_view tok) {
    size_t caret = tok.find('^');
    std::string_view name = tok.substr(0, caret);
    int64_t exp = 1;
    if (caret != std::string_view::npos) exp = parse_int64(tok.substr(caret + 1));
    int gen = -1;
    if (name.size() == 1 && (name[0] == 'x' || name[0] == 'y' || name[0] == 'z')) {
        gen = name[0] - 'x';
        if (ctx.rank() > 3 && gen > 0)
            throw decode_error("letter aliases only apply to rank <= 3 groups");
    } else if (!name.empty() && name[0] == 'x') {
        gen = static_cast<int>(parse_int64(name.substr(1))) - 1;
    } else {
        throw decode_error("bad generator token: " + std::string(tok));
    }
    if (gen < 0 || gen >= ctx.rank()) throw decode_error("generator index out of range: " + std::string(tok));
    return Syllable{gen, exp};
}

}  // namespace

Word word_from_string(const GroupCtx& ctx, std::string_view s) {
    std::string str(s);
    std::string trimmed;
    {
        size_t a = str.find_first_not_of(" \t");
        size_t b = str.find_last_not_of(" \t");
        if (a != std::string::npos) trimmed = str.substr(a, b - a + 1);
    }
    if (trimmed.empty() || trimmed == "e") return identity(ctx);
    if (trimmed.front() == '[') {
        if (trimmed.back() != ']') throw decode_error("unterminated vector literal: " + trimmed);
        if (ctx.family != GroupFamily::FreeAbelian)
            throw decode_error("vector literals are FreeAbelian-only");
        std::vector<int64_t> v;
        std::string body = trimmed.substr(1, trimmed.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) v.push_back(parse_int64(item));
        return word_from_vector(ctx, std::move(v));
    }
    std::vector<Syllable> syls;
    std::stringstream ss(trimmed);
    std::string tok;
    while (ss >> tok) syls.push_back(parse_syllable(ctx, tok));
    return word_from_syllables(ctx, syls);
}

bool ElementSet::contains(const Word& w) const {
    return std::binary_search(elems.begin(), elems.end(), w);
}

std::optional<size_t> ElementSet::index_of(const Word& w) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), w);
    if (it == elems.end() || !(*it == w)) return std::nullopt;
    return static_cast<size_t>(it - elems.begin());
}

ElementSet make_element_set(std::vector<Word> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return ElementSet{std::move(elems)};
}

ElementSet generator_set(const GroupCtx& ctx) {
    std::vector<Word> gens;
    for (int i = 0; i < ctx.rank(); ++i) gens.push_back(generator(ctx, i));
    return make_element_set(std::move(gens));
}

ElementSet ball(const GroupCtx& ctx, int r) {
    if (r < 0) throw decode_error("ball radius must be >= 0");
    std::vector<Word> moves;
    for (int i = 0; i < ctx.rank(); ++i) {
        moves.push_back(generator(ctx, i, 1));
        moves.push_back(generator(ctx, i, -1));
    }
    std::set<Word> seen{identity(ctx)};
    std::vector<Word> frontier{identity(ctx)};
    for (int depth = 1; depth <= r; ++depth) {
        std::vector<Word> next;
        for (const Word& w : frontier)
            for (const Word& m : moves) {
                Word n = mul(ctx, w, m);
                if (seen.insert(n).second) next.push_back(std::move(n));
            }
        frontier = std::move(next);
    }
    return ElementSet{std::vector<Word>(seen.begin(), seen.end())};
}

ElementSet set_product(const GroupCtx& ctx, const ElementSet& s, const ElementSet& f) {
    std::vector<Word> out;
    out.reserve(s.size() * f.size());
    for (const Word& a : s.elems)
        for (const Word& b : f.elems) out.push_back(mul(ctx, a, b));
    return make_element_set(std::move(out));
}

ElementSet power_set_product(const GroupCtx& ctx, const ElementSet& s0, int k) {
    if (k < 1) throw decode_error("power_set_product needs k >= 1");
    if (s0.empty()) throw decode_error("power_set_product needs a nonempty set");
    ElementSet cur = s0;
    for (int j = 2; j <= k; ++j) cur = set_product(ctx, cur, s0);
    return cur;
}

ElementSet inv_set(const GroupCtx& ctx, const ElementSet& s) {
    std::vector<Word> out;
    out.reserve(s.size());
    for (const Word& a : s.elems) out.push_back(inv(ctx, a));
    return make_element_set(std::move(out));
}

namespace {

Rat subset_slack(const ExpansionClaim& claim, uint64_t product_size, uint64_t subset_size) {
    return Rat(static_cast<unsigned long>(product_size)) -
           claim.c * Rat(static_cast<unsigned long>(subset_size)) - claim.b;
}

}  // namespace

ExpansionReport expansion_report(const GroupCtx& ctx, const ElementSet& s,
                                 const ExpansionClaim& claim, const ExpansionSearch& search) {
    if (s.empty()) throw decode_error("expansion_report needs a nonempty S");
    ExpansionReport rep;
    rep.s = s;
    rep.claim = claim;

    bool have_min = false;
    auto consider = [&](const ElementSet& f, uint64_t sf_size) {
        Rat slack = subset_slack(claim, sf_size, f.size());
        ++rep.sets_checked;
        if (!have_min || slack < rep.min_slack) {
            have_min = true;
            rep.min_slack = slack;
            rep.witness = f;
        }
    };

    if (search.kind == ExpansionSearch::Kind::Explicit) {
        if (search.candidates.empty()) throw decode_error("explicit search needs candidates");
        for (const ElementSet& f : search.candidates)
            consider(f, set_product(ctx, s, f).size());
        rep.search_description =
            "explicit candidate list (" + std::to_string(search.candidates.size()) + " sets)";
        return rep;
    }

    ElementSet universe = ball(ctx, search.radius);
    ElementSet su = set_product(ctx, s, universe);
    // Index set of S*u inside SU, for each ball element u.
    std::vector<boost::dynamic_bitset<>> hits(universe.size(),
                                              boost::dynamic_bitset<>(su.size()));
    for (size_t ui = 0; ui < universe.size(); ++ui)
        for (const Word& a : s.elems)
            hits[ui].set(*su.index_of(mul(ctx, a, universe[ui])));

    if (search.kind == ExpansionSearch::Kind::ExhaustiveBall) {
        if (universe.size() > search.max_universe)
            throw resource_cap_error("exhaustive expansion cap exceeded: ball has " +
                                     std::to_string(universe.size()) + " elements, cap " +
                                     std::to_string(search.max_universe));
        size_t n = universe.size();
        std::vector<size_t> chosen;
        boost::dynamic_bitset<> acc(su.size());
        // Depth-first include/exclude sweep sharing union prefixes.
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == n) {
                if (chosen.empty()) return;
                std::vector<Word> fw;
                fw.reserve(chosen.size());
                for (size_t idx : chosen) fw.push_back(universe[idx]);
                consider(ElementSet{std::move(fw)}, acc.count());
                return;
            }
            self(self, i + 1);
            boost::dynamic_bitset<> saved = acc;
            acc |= hits[i];
            chosen.push_back(i);
            self(self, i + 1);
            chosen.pop_back();
            acc = std::move(saved);
        };
        rec(rec, 0);
        rep.exhaustive = true;
        rep.search_description = "all nonempty F within ball(" + std::to_string(search.radius) +
                                 ") (" + std::to_string(rep.sets_checked) + " sets)";
        return rep;
    }

    // SampledBall
    if (search.sample_count == 0) throw decode_error("sampled search needs sample_count > 0");
    size_t cap = search.max_subset_size == 0
                     ? universe.size()
                     : std::min(search.max_subset_size, universe.size());
    SplitMix64 rng(search.seed);
    std::vector<size_t> indices(universe.size());
    for (size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    for (size_t trial = 0; trial < search.sample_count; ++trial) {
        size_t sz = 1 + static_cast<size_t>(rng.uniform_below(cap));
        for (size_t j = 0; j < sz; ++j) {
            size_t pick = j + static_cast<size_t>(rng.uniform_below(indices.size() - j));
            std::swap(indices[j], indices[pick]);
        }
        boost::dynamic_bitset<> acc(su.size());
        std::vector<Word> fw;
        for (size_t j = 0; j < sz; ++j) {
            acc |= hits[indices[j]];
            fw.push_back(universe[indices[j]]);
        }
        consider(make_element_set(std::move(fw)), acc.count());
    }
    rep.search_description = "sampled " + std::to_string(search.sample_count) +
                             " subsets of ball(" + std::to_string(search.radius) +
                             "), sizes <= " + std::to_string(cap) + ", seed " +
                             std::to_string(search.seed);
    return rep;
}

ExpansionClaim preset_claim_w5() { return ExpansionClaim{Rat(3), Rat(2)}; }
ExpansionClaim preset_claim_w3() { return ExpansionClaim{make_rat(4, 3), Rat(0)}; }

ElementSet preset_expansion_set(const GroupCtx& ctx) {
    if (ctx == GroupCtx::w5()) return generator_set(ctx);
    if (ctx == GroupCtx::w3()) return ball(ctx, 1);
    throw decode_error("no preset expansion set for this group");
}

}  // namespace eden
