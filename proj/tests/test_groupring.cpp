#include <doctest.h>

#include "eden/common.hpp"
#include "eden/groupring.hpp"
#include "eden/prng.hpp"

using namespace eden;

namespace {

GRElem random_gr(const GroupCtx& ctx, uint32_t p, SplitMix64& rng, int max_terms) {
    GRElem a = gr_zero(p);
    int n = 1 + static_cast<int>(rng.uniform_below(static_cast<uint64_t>(max_terms)));
    for (int i = 0; i < n; ++i) {
        Word g = identity(ctx);
        int letters = static_cast<int>(rng.uniform_below(4));
        for (int j = 0; j < letters; ++j)
            g = mul(ctx, g,
                    generator(ctx, static_cast<int>(rng.uniform_below(static_cast<uint64_t>(ctx.rank()))),
                              (rng.next() & 1) ? 1 : -1));
        a = gr_add(a, gr_monomial(ctx, p, g, static_cast<uint32_t>(rng.uniform_below(p))));
    }
    return a;
}

}  // namespace

TEST_CASE("convolution examples") {
    GroupCtx w3 = GroupCtx::w3();
    GRElem x = gr_monomial(w3, 5, generator(w3, 0));
    CHECK(gr_mul(w3, x, x) == gr_one(w3, 5));

    GroupCtx z = GroupCtx::free_abelian(1);
    Word u = word_from_vector(z, {1});
    GRElem one_plus_u = gr_add(gr_one(z, 3), gr_monomial(z, 3, u));
    GRElem one_minus_u = gr_add(gr_one(z, 3), gr_monomial(z, 3, u, 2));
    GRElem prod = gr_mul(z, one_plus_u, one_minus_u);
    GRElem expect = gr_add(gr_one(z, 3), gr_monomial(z, 3, word_from_vector(z, {2}), 2));
    CHECK(prod == expect);

    SplitMix64 rng(8);
    GRElem a = random_gr(w3, 5, rng, 5);
    CHECK(gr_mul(w3, a, gr_one(w3, 5)) == a);
    CHECK(gr_is_zero(gr_mul(w3, a, gr_zero(5))));
    CHECK_THROWS_AS(gr_mul(w3, a, gr_zero(7)), decode_error);
}

TEST_CASE("ring axioms on random elements") {
    for (GroupCtx ctx : {GroupCtx::w3(), GroupCtx::free_group(2), GroupCtx::free_abelian(2)}) {
        SplitMix64 rng(1234);
        for (uint32_t p : {2u, 5u}) {
            for (int trial = 0; trial < 25; ++trial) {
                GRElem a = random_gr(ctx, p, rng, 4);
                GRElem b = random_gr(ctx, p, rng, 4);
                GRElem c = random_gr(ctx, p, rng, 4);
                CHECK(gr_mul(ctx, gr_mul(ctx, a, b), c) == gr_mul(ctx, a, gr_mul(ctx, b, c)));
                CHECK(gr_mul(ctx, a, gr_add(b, c)) ==
                      gr_add(gr_mul(ctx, a, b), gr_mul(ctx, a, c)));
                CHECK(gr_mul(ctx, gr_add(a, b), c) ==
                      gr_add(gr_mul(ctx, a, c), gr_mul(ctx, b, c)));
                CHECK(gr_add(a, gr_neg(a)) == gr_zero(p));
            }
        }
    }
}

TEST_CASE("matrix application over the group ring") {
    GroupCtx w3 = GroupCtx::w3();
    uint32_t p = 2;
    GRMatrix m = gr_matrix(p, 2, 2);
    m.at(0, 0) = gr_monomial(w3, p, generator(w3, 0));
    m.at(0, 1) = gr_add(gr_monomial(w3, p, generator(w3, 1)), gr_monomial(w3, p, generator(w3, 2)));

    std::vector<GRElem> v{gr_zero(p), gr_one(w3, p)};
    std::vector<GRElem> out = gr_mat_apply(w3, m, v);
    CHECK(out[0] == m.at(0, 1));
    CHECK(gr_is_zero(out[1]));

    GRMatrix id = gr_matrix(p, 2, 2);
    id.at(0, 0) = gr_one(w3, p);
    id.at(1, 1) = gr_one(w3, p);
    SplitMix64 rng(55);
    std::vector<GRElem> rv{random_gr(w3, p, rng, 3), random_gr(w3, p, rng, 3)};
    CHECK(gr_mat_apply(w3, id, rv) == rv);

    std::vector<GRElem> zero{gr_zero(p), gr_zero(p)};
    for (const GRElem& o : gr_mat_apply(w3, m, zero)) CHECK(gr_is_zero(o));
    CHECK_THROWS_AS(gr_mat_apply(w3, m, {gr_zero(p)}), decode_error);
}

TEST_CASE("restriction of scalars") {
    ExtField gf4 = ExtField::make(2, 2);
    GroupCtx w3 = GroupCtx::w3();

    // omega * g becomes the 2x2 block [[0,1],[1,1]] attached to g.
    ExtGRMatrix m;
    m.rows = m.cols = 1;
    m.e.resize(1);
    Word g = generator(w3, 1);
    m.at(0, 0).terms[g] = ExtScalar{0, 1};
    GRMatrix r = restrict_scalars(gf4, m);
    CHECK(r.rows == 2);
    CHECK(r.cols == 2);
    CHECK(gr_is_zero(r.at(0, 0)));
    CHECK(r.at(0, 1) == gr_monomial(w3, 2, g));
    CHECK(r.at(1, 0) == gr_monomial(w3, 2, g));
    CHECK(r.at(1, 1) == gr_monomial(w3, 2, g));

    // d = 1 is the identity expansion.
    ExtField gf3 = ExtField::make(3, 1);
    ExtGRMatrix m1;
    m1.rows = m1.cols = 2;
    m1.e.resize(4);
    m1.at(0, 1).terms[g] = ExtScalar{2};
    GRMatrix r1 = restrict_scalars(gf3, m1);
    CHECK(r1.rows == 2);
    CHECK(r1.at(0, 1) == gr_monomial(w3, 3, g, 2));

    ExtField gf9 = ExtField::make(3, 2);
    ExtGRMatrix m2;
    m2.rows = m2.cols = 2;
    m2.e.resize(4);
    CHECK(restrict_scalars(gf9, m2).rows == 4);
}

TEST_CASE("restriction of scalars commutes with application") {
    ExtField gf4 = ExtField::make(2, 2);
    GroupCtx z = GroupCtx::free_abelian(1);
    SplitMix64 rng(640);
    for (int trial = 0; trial < 20; ++trial) {
        auto random_ext = [&](int max_terms) {
            ExtGRElem e;
            int n = 1 + static_cast<int>(rng.uniform_below(static_cast<uint64_t>(max_terms)));
            for (int i = 0; i < n; ++i) {
                Word g = word_from_vector(z, {static_cast<int64_t>(rng.uniform_below(5)) - 2});
                ExtScalar c{static_cast<uint32_t>(rng.uniform_below(2)),
                            static_cast<uint32_t>(rng.uniform_below(2))};
                if (!ext_is_zero(c)) e.terms[g] = c;
            }
            return e;
        };
        ExtGRMatrix m;
        m.rows = m.cols = 2;
        m.e.resize(4);
        for (size_t i = 0; i < 4; ++i) m.e[i] = random_ext(3);
        std::vector<ExtGRElem> v{random_ext(3), random_ext(3)};

        // Apply over GF(4) directly: out_i = sum_j M_ij * v_j with
        // extension-coefficient convolution.
        auto ext_conv = [&](const ExtGRElem& a, const ExtGRElem& b) {
            ExtGRElem out;
            for (const auto& [g, ac] : a.terms)
                for (const auto& [h, bc] : b.terms) {
                    Word gh = mul(z, g, h);
                    ExtScalar cur = out.terms.count(gh) ? out.terms[gh] : ext_zero(gf4);
                    cur = ext_add(gf4, cur, ext_mul(gf4, ac, bc));
                    if (ext_is_zero(cur))
                        out.terms.erase(gh);
                    else
                        out.terms[gh] = cur;
                }
            return out;
        };
        auto ext_sum = [&](const ExtGRElem& a, const ExtGRElem& b) {
            ExtGRElem out = a;
            for (const auto& [g, c] : b.terms) {
                ExtScalar cur = out.terms.count(g) ? out.terms[g] : ext_zero(gf4);
                cur = ext_add(gf4, cur, c);
                if (ext_is_zero(cur))
                    out.terms.erase(g);
                else
                    out.terms[g] = cur;
            }
            return out;
        };
        std::vector<ExtGRElem> direct(2);
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j)
                direct[i] = ext_sum(direct[i], ext_conv(m.at(i, j), v[j]));

        // Expand the vector: element of GF(4)^2 G becomes GF(2)^4 G via
        // coordinates of each scalar.
        auto expand_vec = [&](const std::vector<ExtGRElem>& xs) {
            std::vector<GRElem> out(xs.size() * 2, gr_zero(2));
            for (size_t j = 0; j < xs.size(); ++j)
                for (const auto& [g, c] : xs[j].terms)
                    for (size_t bi = 0; bi < 2; ++bi)
                        if (c[bi]) out[j * 2 + bi].terms[g] = c[bi];
            return out;
        };
        CHECK(gr_mat_apply(z, restrict_scalars(gf4, m), expand_vec(v)) == expand_vec(direct));
    }
}
