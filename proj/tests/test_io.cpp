#include <doctest.h>

#include <string>

#include "eden/io.hpp"
#include "eden/ore.hpp"
#include "eden/prng.hpp"

using namespace eden;

namespace {

SynthesisResult toy_synthesis() {
    SynthesisSpec spec;
    spec.ctx = GroupCtx::w3();
    spec.S0 = generator_set(spec.ctx);
    spec.epsilon = Rat(2);
    spec.c = Rat(2);
    spec.p_ladder = {2, 3, 5, 7, 11, 13};
    spec.seed = 42;
    return synthesize(spec);
}

}  // namespace

TEST_CASE("group contexts round-trip") {
    for (const GroupCtx& ctx : {GroupCtx::w3(), GroupCtx::w5(), GroupCtx::free_group(2),
                                GroupCtx::free_abelian(3),
                                GroupCtx::free_product_of_cyclics({2, 3, 4})}) {
        std::string text = encode_group(ctx);
        CHECK(decode_group(text) == ctx);
        CHECK(text.back() == '\n');
        CHECK(encode_group(ctx) == text);
    }
    CHECK_THROWS_AS(decode_group("{\"family\":\"dihedral\",\"params\":[3]}"), decode_error);
    CHECK_THROWS_AS(decode_group("{\"family\":\"free_group\",\"params\":[0]}"), decode_error);
    CHECK_THROWS_AS(decode_group("not json"), decode_error);
    CHECK_THROWS_AS(decode_group("[1,2]"), decode_error);
}

TEST_CASE("matrices round-trip as sparse triplets") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        uint32_t p = trial % 2 ? 5 : 2;
        FFMatrix m = make_matrix(p, 1 + rng.uniform_below(6), 1 + rng.uniform_below(6));
        for (size_t i = 0; i < m.rows; ++i)
            for (size_t j = 0; j < m.cols; ++j)
                m.at(i, j) = static_cast<uint32_t>(rng.uniform_below(p));
        std::string text = encode_matrix(m);
        CHECK(decode_matrix(text) == m);
    }

    CHECK_THROWS_AS(decode_matrix("{\"p\":4,\"rows\":1,\"cols\":1,\"triplets\":[]}"),
                    decode_error);
    // Explicit zeros, out-of-order triplets, and out-of-range indices
    // are all rejected.
    CHECK_THROWS_AS(
        decode_matrix("{\"p\":3,\"rows\":2,\"cols\":2,\"triplets\":[[0,0,0]]}"), decode_error);
    CHECK_THROWS_AS(
        decode_matrix("{\"p\":3,\"rows\":2,\"cols\":2,\"triplets\":[[0,1,1],[0,0,1]]}"),
        decode_error);
    CHECK_THROWS_AS(
        decode_matrix("{\"p\":3,\"rows\":2,\"cols\":2,\"triplets\":[[2,0,1]]}"), decode_error);
    CHECK_THROWS_AS(decode_matrix("{\"p\":3,\"rows\":2,\"cols\":2}"), decode_error);
}

TEST_CASE("cycle systems round-trip through hex bitsets") {
    for (int n : {2, 3, 4}) {
        CycleSystem base = build_cycle_system(n);
        CHECK(decode_cycle_system(encode_cycle_system(base)) == base);
        CycleSystem aug = augment(base, Rat(3));
        CHECK(decode_cycle_system(encode_cycle_system(aug)) == aug);
    }

    CycleSystem sys = augment(build_cycle_system(2), Rat(2));
    std::string text = encode_cycle_system(sys);
    // Tampering with a sealed value trips the digest.
    std::string bad = text;
    size_t at = bad.find("\"extra_point\":3");
    REQUIRE(at != std::string::npos);
    bad.replace(at, 15, "\"extra_point\":0");
    CHECK_THROWS_AS(decode_cycle_system(bad), decode_error);
    // The extra point must stay outside every X_i even without a seal.
    CHECK_THROWS_AS(decode_cycle_system(
                        "{\"n\":2,\"k\":1,\"sizeY\":4,\"X\":[\"5\",\"6\"],\"extra_point\":0}"),
                    decode_error);
    CHECK_THROWS_AS(
        decode_cycle_system("{\"n\":2,\"k\":1,\"sizeY\":4,\"X\":[\"51\",\"6\"]}"), decode_error);
}

TEST_CASE("automata round-trip and tampering is detected") {
    LinearCA muller = muller_ca(2);
    std::string text = encode_ca(muller);
    LinearCA back = decode_ca(text);
    CHECK(back.ctx == muller.ctx);
    CHECK(back.S == muller.S);
    CHECK(back.p == muller.p);
    CHECK(back.m == muller.m);
    CHECK(back.alpha == muller.alpha);
    CHECK_FALSE(back.provenance.has_value());
    CHECK(encode_ca(back) == text);

    // Any byte flip in a value breaks the seal.
    std::string tampered = text;
    size_t pos = tampered.find("\"m\":2");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 5, "\"m\":3");
    CHECK_THROWS_AS(decode_ca(tampered), decode_error);

    // Without the digest the same edit fails structural validation.
    CHECK_THROWS_AS(decode_ca("{\"group\":{\"family\":\"free_group\",\"params\":[1]},"
                              "\"p\":2,\"m\":1,\"memory\":[\"e\"],\"alpha\":"
                              "[{\"p\":2,\"rows\":2,\"cols\":1,\"triplets\":[]}]}"),
                    decode_error);
    CHECK_THROWS_AS(decode_ca("{\"group\":{\"family\":\"free_group\",\"params\":[1]},"
                              "\"p\":2,\"m\":1,\"memory\":[\"x1\",\"e\"],\"alpha\":"
                              "[{\"p\":2,\"rows\":1,\"cols\":1,\"triplets\":[]},"
                              "{\"p\":2,\"rows\":1,\"cols\":1,\"triplets\":[]}]}"),
                    decode_error);
}

TEST_CASE("synthesized automaton and certificate round-trip") {
    SynthesisResult r = toy_synthesis();
    std::string ca_text = encode_ca(r.ca);
    LinearCA back = decode_ca(ca_text);
    CHECK(back.alpha == r.ca.alpha);
    REQUIRE(back.provenance.has_value());
    CHECK(*back.provenance == *r.ca.provenance);
    CHECK(encode_ca(back) == ca_text);

    std::string cert_text = encode_certificate(r.certificate);
    InjCertificate cert = decode_certificate(cert_text);
    CHECK(cert.n == r.certificate.n);
    CHECK(cert.k == r.certificate.k);
    CHECK(cert.sizeY == r.certificate.sizeY);
    CHECK(cert.p == r.certificate.p);
    CHECK(cert.seed == r.certificate.seed);
    CHECK(cert.families_checked == r.certificate.families_checked);
    CHECK(cert.all_kernel_dims_zero == r.certificate.all_kernel_dims_zero);
    CHECK(cert.probabilistic == r.certificate.probabilistic);
    CHECK(cert.wall_time == 0.0);
    REQUIRE(cert.maximal_family_descriptors.size() ==
            r.certificate.maximal_family_descriptors.size());
    for (size_t i = 0; i < cert.maximal_family_descriptors.size(); ++i) {
        CHECK(cert.maximal_family_descriptors[i].sizes ==
              r.certificate.maximal_family_descriptors[i].sizes);
        CHECK(cert.maximal_family_descriptors[i].choices_digest ==
              r.certificate.maximal_family_descriptors[i].choices_digest);
        CHECK(cert.maximal_family_descriptors[i].families ==
              r.certificate.maximal_family_descriptors[i].families);
    }
    // Re-encoding the artifact is byte-stable even though wall_time
    // was dropped.
    CHECK(encode_certificate(cert) == cert_text);

    std::string tampered = cert_text;
    size_t pos = tampered.find("\"families_checked\":15");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 21, "\"families_checked\":16");
    CHECK_THROWS_AS(decode_certificate(tampered), decode_error);
}

TEST_CASE("configs and group ring elements round-trip") {
    GroupCtx w3 = GroupCtx::w3();
    Word x = generator(w3, 0);
    Word xy = mul(w3, x, generator(w3, 1));
    Config phi = make_config({{identity(w3), {0, 1}}, {x, {2, 0}}, {xy, {1, 2}}}, 3);
    std::string text = encode_config(w3, phi);
    CHECK(decode_config(w3, 3, text) == phi);

    CHECK_THROWS_AS(decode_config(w3, 3, "{\"entries\":[[\"e\",[0,0]]]}"), decode_error);
    CHECK_THROWS_AS(decode_config(w3, 3, "{\"entries\":[[\"e\",[3]]]}"), decode_error);
    CHECK_THROWS_AS(decode_config(w3, 3, "{\"entries\":[[\"x\",[1]],[\"e\",[1]]]}"),
                    decode_error);

    GroupCtx z = GroupCtx::free_abelian(1);
    GRElem a = gr_add(gr_one(z, 5), gr_monomial(z, 5, word_from_vector(z, {2}), 4));
    auto [ctx2, back] = decode_grelem(encode_grelem(z, a));
    CHECK(ctx2 == z);
    CHECK(back == a);

    GRElem parsed = grelem_from_terms_string(z, 5, "[0]:1 + [2]:4");
    CHECK(parsed == a);
    CHECK(grelem_from_terms_string(z, 5, grelem_to_terms_string(z, a)) == a);
    CHECK(grelem_from_terms_string(z, 5, "0") == gr_zero(5));
    CHECK(grelem_to_terms_string(z, gr_zero(5)) == "0");
    // Coefficients reduce mod p and repeated words accumulate.
    CHECK(grelem_from_terms_string(z, 5, "[0]:6") == gr_one(z, 5));
    CHECK(grelem_from_terms_string(z, 5, "[0]:2+[0]:3") == gr_zero(5));
    CHECK_THROWS_AS(grelem_from_terms_string(z, 5, "[0]"), decode_error);
    CHECK_THROWS_AS(grelem_from_terms_string(z, 5, "[0]:x"), decode_error);
    CHECK_THROWS_AS(grelem_from_terms_string(z, 5, ""), decode_error);
}

TEST_CASE("patterns certificates and manifests serialize canonically") {
    LinearCA muller = muller_ca(2);
    std::optional<Pattern> goe = goe_unit_witness(muller);
    REQUIRE(goe.has_value());
    std::string ptext = encode_pattern(muller.ctx, *goe);
    CHECK(ptext.find("\"window\":[\"e\"]") != std::string::npos);
    CHECK(artifact_digest(ptext).size() == 16);

    SynthesisResult r = toy_synthesis();
    std::optional<PreinjCertificate> cert = preinj_certificate(r.ca, ball(r.ca.ctx, 1));
    REQUIRE(cert.has_value());
    std::string ctext = encode_preinj_certificate(r.ca.ctx, *cert);
    CHECK(ctext.find("\"sumX\":18") != std::string::npos);
    CHECK(ctext.find("\"kernel_dim\":0") != std::string::npos);

    RunManifest m;
    m.command = "edenca synth --group w5";
    m.seed = 9;
    m.preset = "tree5";
    m.wall_times["synthesize"] = 1.5;
    m.outputs["ca.json"] = artifact_digest(encode_ca(muller));
    std::string mtext = encode_manifest(m);
    CHECK(mtext.find("\"seed\":9") != std::string::npos);
    CHECK(mtext.find("\"prng\":\"splitmix64-v1\"") != std::string::npos);
    CHECK(encode_manifest(m) == mtext);

    CHECK_THROWS_AS(artifact_digest("{\"a\":1}"), decode_error);
}

TEST_CASE("file helpers write and reread bytes") {
    std::string path = "/tmp/eden_io_test_artifact.json";
    std::string text = encode_group(GroupCtx::w5());
    write_file(path, text);
    CHECK(read_file(path) == text);
    CHECK_THROWS_AS(read_file("/tmp/eden_io_test_missing_file.json"), decode_error);
}
