#include <doctest.h>

#include "eden/group.hpp"
#include "eden/prng.hpp"
#include "eden/rational.hpp"

using namespace eden;

namespace {

Word random_word(const GroupCtx& ctx, SplitMix64& rng, int letters) {
    Word w = identity(ctx);
    for (int i = 0; i < letters; ++i) {
        int g = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(ctx.rank())));
        int64_t e = (rng.next() & 1) ? 1 : -1;
        w = mul(ctx, w, generator(ctx, g, e));
    }
    return w;
}

}  // namespace

TEST_CASE("rational helpers") {
    CHECK(harmonic(1) == Rat(1));
    CHECK(harmonic(2) == make_rat(3, 2));
    CHECK(harmonic(5) == make_rat(137, 60));

    CHECK(rat_from_string("4/3") == make_rat(4, 3));
    CHECK(rat_from_string("-6/4") == make_rat(-3, 2));
    CHECK(rat_from_string("7") == Rat(7));
    CHECK(rat_to_string(make_rat(4, 3)) == "4/3");
    CHECK(rat_to_string(Rat(-5)) == "-5");
    CHECK_THROWS_AS(rat_from_string("1/0"), decode_error);
    CHECK_THROWS_AS(rat_from_string("abc"), decode_error);

    CHECK(rat_floor(make_rat(7, 3)) == 2);
    CHECK(rat_ceil(make_rat(7, 3)) == 3);
    CHECK(rat_floor(make_rat(-7, 3)) == -3);
    CHECK(rat_ceil(make_rat(-7, 3)) == -2);
    CHECK(rat_ceil(Rat(4)) == 4);
}

TEST_CASE("certified ln enclosures") {
    // ln 2 = 0.69314718055994530941...
    Rat d_lo = rat_from_string("693147180559945309/1000000000000000000");
    Rat d_hi = rat_from_string("693147180559945310/1000000000000000000");
    LnBounds two = ln_bounds(Rat(2));
    CHECK(two.lower <= two.upper);
    CHECK(two.lower < d_hi);
    CHECK(two.upper > d_lo);
    CHECK(two.upper - two.lower < make_rat(1, 1000000000));

    // ln 10 = 2.302585092994045684...
    LnBounds ten = ln_bounds(Rat(10));
    CHECK(ten.lower < rat_from_string("2302585092994045685/1000000000000000000"));
    CHECK(ten.upper > rat_from_string("2302585092994045684/1000000000000000000"));

    LnBounds half = ln_bounds(make_rat(1, 2));
    CHECK(half.lower == -two.upper);
    CHECK(half.upper == -two.lower);

    LnBounds one = ln_bounds(Rat(1));
    CHECK(one.lower == 0);
    CHECK(one.upper == 0);

    CHECK_THROWS_AS(ln_bounds(Rat(0)), decode_error);
}

TEST_CASE("splitmix64 reference stream") {
    SplitMix64 g(0);
    CHECK(g.next() == 0xe220a8397b1dcdafull);
    CHECK(g.next() == 0x6e789e6aa1b965f4ull);
    CHECK(g.next() == 0x06c45d188009454full);

    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

    SplitMix64 c(7);
    for (int i = 0; i < 1000; ++i) CHECK(c.uniform_below(10) < 10);
}

TEST_CASE("group context validation") {
    CHECK(GroupCtx::w3().rank() == 3);
    CHECK(GroupCtx::w5().rank() == 5);
    CHECK(GroupCtx::w3().order_of(0) == 2);
    CHECK(GroupCtx::free_group(2).rank() == 2);
    CHECK(GroupCtx::free_group(2).order_of(1) == 0);
    CHECK(GroupCtx::free_abelian(4).rank() == 4);
    CHECK_THROWS_AS(GroupCtx::free_product_of_cyclics({2, 1}), decode_error);
    CHECK_THROWS_AS(GroupCtx::free_group(0), decode_error);
    CHECK_THROWS_AS(GroupCtx::free_abelian(-1), decode_error);
    CHECK(family_from_name("FreeGroup") == GroupFamily::FreeGroup);
    CHECK(family_name(GroupFamily::FreeProductOfCyclics) == "FreeProductOfCyclics");
    CHECK_THROWS_AS(family_from_name("Dihedral"), decode_error);
}

TEST_CASE("multiplication examples") {
    GroupCtx w3 = GroupCtx::w3();
    Word x = generator(w3, 0);
    CHECK(mul(w3, x, x) == identity(w3));

    GroupCtx f2 = GroupCtx::free_group(2);
    Word a = generator(f2, 0), b = generator(f2, 1);
    Word ab = mul(f2, a, b);
    Word binv_a = mul(f2, inv(f2, b), a);
    CHECK(mul(f2, ab, binv_a) == generator(f2, 0, 2));

    GroupCtx z2 = GroupCtx::free_abelian(2);
    Word u = word_from_vector(z2, {1, 2});
    Word v = word_from_vector(z2, {3, -1});
    CHECK(mul(z2, u, v) == word_from_vector(z2, {4, 1}));
}

TEST_CASE("inverse examples") {
    GroupCtx w3 = GroupCtx::w3();
    Word xy = mul(w3, generator(w3, 0), generator(w3, 1));
    Word yx = mul(w3, generator(w3, 1), generator(w3, 0));
    CHECK(inv(w3, xy) == yx);
    CHECK(inv(w3, identity(w3)) == identity(w3));

    GroupCtx z1 = GroupCtx::free_abelian(1);
    CHECK(inv(z1, word_from_vector(z1, {5})) == word_from_vector(z1, {-5}));
}

TEST_CASE("ball enumeration") {
    CHECK(ball(GroupCtx::w5(), 2).size() == 26);
    CHECK(ball(GroupCtx::w3(), 1).size() == 4);
    CHECK(ball(GroupCtx::free_abelian(1), 3).size() == 7);
    CHECK(ball(GroupCtx::w3(), 0).size() == 1);
    CHECK_THROWS_AS(ball(GroupCtx::w3(), -1), decode_error);

    // Closed forms on trees, r <= 4.
    for (int m : {3, 5}) {
        GroupCtx ctx = GroupCtx::free_product_of_cyclics(std::vector<int64_t>(m, 2));
        for (int r = 0; r <= 4; ++r) {
            size_t expect = 1;
            size_t shell = static_cast<size_t>(m);
            for (int j = 1; j <= r; ++j) {
                expect += shell;
                shell *= static_cast<size_t>(m - 1);
            }
            CHECK(ball(ctx, r).size() == expect);
        }
    }
    for (int k : {1, 2}) {
        GroupCtx ctx = GroupCtx::free_group(k);
        for (int r = 0; r <= 4; ++r) {
            size_t expect = 1;
            size_t shell = static_cast<size_t>(2 * k);
            for (int j = 1; j <= r; ++j) {
                expect += shell;
                shell *= static_cast<size_t>(2 * k - 1);
            }
            CHECK(ball(ctx, r).size() == expect);
        }
    }

    // Canonical order: length first, then lexicographic.
    ElementSet b1 = ball(GroupCtx::w3(), 1);
    CHECK(b1[0] == identity(GroupCtx::w3()));
    CHECK(b1[1] == generator(GroupCtx::w3(), 0));
    CHECK(b1[2] == generator(GroupCtx::w3(), 1));
    CHECK(b1[3] == generator(GroupCtx::w3(), 2));
    CHECK(b1.index_of(generator(GroupCtx::w3(), 2)) == 3);
    CHECK(!b1.index_of(mul(GroupCtx::w3(), b1[1], b1[2])).has_value());
}

TEST_CASE("set products") {
    GroupCtx w5 = GroupCtx::w5();
    ElementSet gens = generator_set(w5);
    ElementSet just_id = make_element_set({identity(w5)});
    CHECK(set_product(w5, gens, just_id).size() == 5);
    CHECK(set_product(w5, gens, ball(w5, 1)) == ball(w5, 2));

    GroupCtx z1 = GroupCtx::free_abelian(1);
    std::vector<Word> sw, fw;
    for (int64_t i = -1; i <= 1; ++i) sw.push_back(word_from_vector(z1, {i}));
    for (int64_t i = 0; i <= 4; ++i) fw.push_back(word_from_vector(z1, {i}));
    CHECK(set_product(z1, make_element_set(sw), make_element_set(fw)).size() == 7);

    GroupCtx w3 = GroupCtx::w3();
    CHECK(power_set_product(w3, generator_set(w3), 2).size() == 7);
    CHECK(power_set_product(w3, generator_set(w3), 1) == generator_set(w3));
    ElementSet zero_one = make_element_set({word_from_vector(z1, {0}), word_from_vector(z1, {1})});
    ElementSet sq = power_set_product(z1, zero_one, 2);
    CHECK(sq.size() == 3);
    CHECK(sq.contains(word_from_vector(z1, {2})));
    CHECK_THROWS_AS(power_set_product(w3, ElementSet{}, 2), decode_error);

    CHECK(inv_set(w3, ball(w3, 2)) == ball(w3, 2));
    GroupCtx f2 = GroupCtx::free_group(2);
    ElementSet asym = make_element_set({generator(f2, 0), generator(f2, 1, -1)});
    ElementSet asym_inv = inv_set(f2, asym);
    CHECK(asym_inv.contains(generator(f2, 0, -1)));
    CHECK(asym_inv.contains(generator(f2, 1)));
}

TEST_CASE("group axioms on random triples") {
    for (GroupCtx ctx : {GroupCtx::w3(), GroupCtx::free_group(2), GroupCtx::free_abelian(2),
                         GroupCtx::free_product_of_cyclics({3, 4})}) {
        SplitMix64 rng(9001);
        for (int trial = 0; trial < 50; ++trial) {
            Word a = random_word(ctx, rng, 6);
            Word b = random_word(ctx, rng, 6);
            Word c = random_word(ctx, rng, 6);
            CHECK(mul(ctx, mul(ctx, a, b), c) == mul(ctx, a, mul(ctx, b, c)));
            CHECK(mul(ctx, a, identity(ctx)) == a);
            CHECK(mul(ctx, identity(ctx), a) == a);
            CHECK(mul(ctx, a, inv(ctx, a)) == identity(ctx));
            CHECK(is_identity(mul(ctx, inv(ctx, a), a)));
        }
    }
}

TEST_CASE("reduction idempotence") {
    for (GroupCtx ctx : {GroupCtx::w3(), GroupCtx::free_group(3),
                         GroupCtx::free_product_of_cyclics({2, 3, 5})}) {
        SplitMix64 rng(77);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Syllable> raw;
            int n = 1 + static_cast<int>(rng.uniform_below(12));
            for (int i = 0; i < n; ++i)
                raw.push_back({static_cast<int32_t>(rng.uniform_below(static_cast<uint64_t>(ctx.rank()))),
                               static_cast<int64_t>(rng.uniform_below(9)) - 4});
            Word w = word_from_syllables(ctx, raw);
            Word again = word_from_syllables(ctx, w.syls);
            CHECK(w == again);
            // normal-form invariants
            for (size_t i = 0; i < w.syls.size(); ++i) {
                CHECK(w.syls[i].exp != 0);
                if (i + 1 < w.syls.size()) CHECK(w.syls[i].gen != w.syls[i + 1].gen);
                int64_t ord = ctx.order_of(w.syls[i].gen);
                if (ord > 0) {
                    CHECK(w.syls[i].exp >= 1);
                    CHECK(w.syls[i].exp < ord);
                }
            }
        }
    }
}

TEST_CASE("set product growth properties") {
    GroupCtx w3 = GroupCtx::w3();
    SplitMix64 rng(123);
    ElementSet b2 = ball(w3, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Word> fs, ss;
        for (const Word& w : b2.elems) {
            if (rng.next() & 1) fs.push_back(w);
            if ((rng.next() & 3) == 0) ss.push_back(w);
        }
        if (ss.empty()) ss.push_back(random_word(w3, rng, 3));
        ElementSet f = make_element_set(fs);
        ElementSet s = make_element_set(ss);
        ElementSet sf = set_product(w3, s, f);
        CHECK(sf.size() >= f.size());
        // monotonicity under enlarging F
        std::vector<Word> f2w = f.elems;
        f2w.push_back(random_word(w3, rng, 4));
        ElementSet sf2 = set_product(w3, s, make_element_set(f2w));
        for (const Word& w : sf.elems) CHECK(sf2.contains(w));
    }
}

TEST_CASE("expansion report exhaustive on W5") {
    GroupCtx w5 = GroupCtx::w5();
    ExpansionSearch search;
    search.kind = ExpansionSearch::Kind::ExhaustiveBall;
    search.radius = 1;
    ExpansionReport rep = expansion_report(w5, generator_set(w5), preset_claim_w5(), search);
    CHECK(rep.sets_checked == 63);
    CHECK(rep.exhaustive);
    CHECK(rep.min_slack >= 0);
}

TEST_CASE("expansion report explicit candidates") {
    GroupCtx z1 = GroupCtx::free_abelian(1);
    std::vector<Word> sw, fw;
    for (int64_t i = -1; i <= 1; ++i) sw.push_back(word_from_vector(z1, {i}));
    for (int64_t i = 0; i <= 9; ++i) fw.push_back(word_from_vector(z1, {i}));
    ExpansionSearch search;
    search.kind = ExpansionSearch::Kind::Explicit;
    search.candidates = {make_element_set(fw)};
    ExpansionReport rep =
        expansion_report(z1, make_element_set(sw), ExpansionClaim{Rat(2), Rat(0)}, search);
    CHECK(rep.sets_checked == 1);
    CHECK(rep.min_slack == Rat(-8));
    CHECK(rep.witness.size() == 10);
}

TEST_CASE("expansion of a singleton F equals #S") {
    GroupCtx w3 = GroupCtx::w3();
    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Word> sw;
        int n = 1 + static_cast<int>(rng.uniform_below(6));
        for (int i = 0; i < n; ++i) sw.push_back(random_word(w3, rng, 3));
        ElementSet s = make_element_set(sw);
        ExpansionSearch search;
        search.kind = ExpansionSearch::Kind::Explicit;
        search.candidates = {make_element_set({identity(w3)})};
        ExpansionReport rep = expansion_report(w3, s, ExpansionClaim{Rat(0), Rat(0)}, search);
        CHECK(rep.min_slack == Rat(static_cast<unsigned long>(s.size())));
    }
}

TEST_CASE("expansion report caps and sampling") {
    GroupCtx w5 = GroupCtx::w5();
    ExpansionSearch search;
    search.kind = ExpansionSearch::Kind::ExhaustiveBall;
    search.radius = 2;
    search.max_universe = 10;
    CHECK_THROWS_AS(expansion_report(w5, generator_set(w5), preset_claim_w5(), search),
                    resource_cap_error);

    ExpansionSearch sampled;
    sampled.kind = ExpansionSearch::Kind::SampledBall;
    sampled.radius = 2;
    sampled.sample_count = 200;
    sampled.max_subset_size = 8;
    sampled.seed = 11;
    ExpansionReport rep = expansion_report(w5, generator_set(w5), preset_claim_w5(), sampled);
    CHECK(rep.sets_checked == 200);
    CHECK(!rep.exhaustive);
    CHECK(rep.min_slack >= 0);

    ExpansionReport rep2 = expansion_report(w5, generator_set(w5), preset_claim_w5(), sampled);
    CHECK(rep2.min_slack == rep.min_slack);
    CHECK(rep2.witness == rep.witness);
}

TEST_CASE("W3 preset claim holds on ball(1) subsets") {
    GroupCtx w3 = GroupCtx::w3();
    ExpansionSearch search;
    search.kind = ExpansionSearch::Kind::ExhaustiveBall;
    search.radius = 1;
    ExpansionReport rep =
        expansion_report(w3, preset_expansion_set(w3), preset_claim_w3(), search);
    CHECK(rep.sets_checked == 15);
    CHECK(rep.min_slack >= 0);
}

TEST_CASE("word string round trips") {
    GroupCtx w3 = GroupCtx::w3();
    Word xzx = word_from_string(w3, "x1 x3 x1");
    CHECK(xzx.syls.size() == 3);
    CHECK(word_to_string(w3, xzx) == "x1 x3 x1");
    CHECK(word_from_string(w3, "x z x") == xzx);
    CHECK(word_from_string(w3, "e") == identity(w3));
    CHECK(word_from_string(w3, "") == identity(w3));
    CHECK(word_to_string(w3, identity(w3)) == "e");
    CHECK(word_from_string(w3, "x1 x1") == identity(w3));

    GroupCtx f2 = GroupCtx::free_group(2);
    Word w = word_from_string(f2, "x1^2 x2^-3");
    CHECK(w == mul(f2, generator(f2, 0, 2), generator(f2, 1, -3)));
    CHECK(word_to_string(f2, w) == "x1^2 x2^-3");

    GroupCtx z2 = GroupCtx::free_abelian(2);
    CHECK(word_to_string(z2, word_from_vector(z2, {3, -1})) == "[3,-1]");
    CHECK(word_from_string(z2, "[3,-1]") == word_from_vector(z2, {3, -1}));
    CHECK(word_to_string(z2, identity(z2)) == "[0,0]");

    SplitMix64 rng(2024);
    for (GroupCtx ctx : {GroupCtx::w5(), GroupCtx::free_group(3), GroupCtx::free_abelian(3),
                         GroupCtx::free_product_of_cyclics({3, 5})}) {
        for (int trial = 0; trial < 30; ++trial) {
            Word a = random_word(ctx, rng, 8);
            CHECK(word_from_string(ctx, word_to_string(ctx, a)) == a);
        }
    }

    CHECK_THROWS_AS(word_from_string(w3, "x4"), decode_error);
    CHECK_THROWS_AS(word_from_string(w3, "q"), decode_error);
    CHECK_THROWS_AS(word_from_string(w3, "[1,2,3]"), decode_error);
    CHECK_THROWS_AS(word_from_string(z2, "[1]"), decode_error);
    CHECK_THROWS_AS(word_from_string(z2, "[1,"), decode_error);
}
