#include "eden/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "eden/analysis.hpp"
#include "eden/common.hpp"
#include "eden/io.hpp"
#include "eden/ore.hpp"
#include "eden/synth.hpp"

namespace eden {

namespace {

int default_threads() {
    if (const char* env = std::getenv("EDENCA_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 256) return static_cast<int>(v);
    }
    return 1;
}

std::vector<int64_t> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int64_t> vals;
    size_t pos = 0;
    while (true) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t used = 0;
        int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw decode_error(what + ": bad integer '" + tok + "'");
        }
        if (used != tok.size()) throw decode_error(what + ": bad integer '" + tok + "'");
        vals.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return vals;
}

GroupCtx parse_group(const std::string& name) {
    if (name == "w3") return GroupCtx::w3();
    if (name == "w5") return GroupCtx::w5();
    if (name == "z") return GroupCtx::free_abelian(1);
    if (size_t pos = name.find(':'); pos != std::string::npos) {
        std::string kind = name.substr(0, pos);
        std::vector<int64_t> vals = parse_int_list(name.substr(pos + 1), "--group " + kind);
        if (kind == "free" && vals.size() == 1) return GroupCtx::free_group(static_cast<int>(vals[0]));
        if (kind == "abelian" && vals.size() == 1)
            return GroupCtx::free_abelian(static_cast<int>(vals[0]));
        if (kind == "cyclics") return GroupCtx::free_product_of_cyclics(vals);
    }
    throw decode_error("unknown group '" + name +
                       "'; use w3, w5, z, free:N, abelian:N or cyclics:a,b,...");
}

std::vector<uint32_t> parse_ladder(const std::string& s) {
    std::vector<uint32_t> out;
    for (int64_t v : parse_int_list(s, "--p-ladder")) {
        if (v < 2 || v > 0x7fffffff) throw decode_error("--p-ladder: prime out of range");
        out.push_back(static_cast<uint32_t>(v));
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string format_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << s;
    return os.str();
}

// Human-readable polynomial form, e.g. "x1 + 2*x3"; the machine
// grammar lives in grelem_to_terms_string.
std::string gr_display(const GroupCtx& ctx, const GRElem& a) {
    if (gr_is_zero(a)) return "0";
    std::string s;
    for (const auto& [g, c] : a.terms) {
        if (!s.empty()) s += " + ";
        if (is_identity(g)) {
            s += std::to_string(c);
        } else if (c == 1) {
            s += word_to_string(ctx, g);
        } else {
            s += std::to_string(c) + "*" + word_to_string(ctx, g);
        }
    }
    return s;
}

std::string set_display(const GroupCtx& ctx, const ElementSet& f, size_t cap = 16) {
    std::string s = "[";
    for (size_t i = 0; i < f.elems.size(); ++i) {
        if (i >= cap) {
            s += ", ...";
            break;
        }
        if (i) s += ", ";
        s += word_to_string(ctx, f.elems[i]);
    }
    return s + "]";
}

ElementSet parse_support(const GroupCtx& ctx, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array())
        throw decode_error("--support: expected a JSON array of word strings");
    std::vector<Word> words;
    for (const auto& item : j) {
        if (!item.is_string()) throw decode_error("--support: expected a JSON array of word strings");
        words.push_back(word_from_string(ctx, item.get<std::string>()));
    }
    if (words.empty()) throw decode_error("--support: set is empty");
    return make_element_set(std::move(words));
}

LinearCA load_ca(const std::string& path) { return decode_ca(read_file(path)); }

std::string join_args(const std::vector<std::string>& args) {
    std::string s = "edenca";
    for (const auto& a : args) {
        s += ' ';
        s += a;
    }
    return s;
}

struct CliState {
    std::ostream& out;
    int rc = 0;
    std::string command;

    // lemma1
    int l1_n = 2;
    bool l1_verify = false;
    std::string l1_augment;
    uint64_t l1_sample = 512;
    uint64_t l1_seed = 0;
    std::string l1_out;

    // synth
    std::string sy_group;
    std::string sy_preset;
    std::string sy_epsilon;
    std::string sy_c;
    std::string sy_ladder = "2,3,5,7,11,13";
    uint64_t sy_seed = 0;
    std::string sy_mode = "certified";
    uint64_t sy_samples = 64;
    int sy_threads = default_threads();
    uint32_t sy_max_prime = 97;
    std::string sy_out, sy_cert, sy_manifest;

    // analyze
    std::string an_ca;
    int an_window_radius = 0;
    int an_radius = 1;
    uint64_t an_work_cap = 200000000ull;
    std::string an_support;
    int an_probe_radius = 4;
    int an_probe_window = 6;

    // muller
    uint32_t mu_p = 2;
    bool mu_demo = false;
    int mu_radius = 3;
    std::string mu_out;

    // ore
    std::string or_group = "z";
    uint32_t or_p = 2;
    std::string or_a, or_s;
    uint64_t or_max_box = 4096;
    std::string or_source = "muller";
    int or_radius = 2;

    // expansion
    std::string ex_group;
    int ex_radius = 1;
    std::string ex_claim;
    std::string ex_set = "preset";
    uint64_t ex_max_universe = 26;
    std::string ex_mode = "exhaustive";
    uint64_t ex_samples = 256;
    uint64_t ex_max_subset = 8;
    uint64_t ex_seed = 0;

    explicit CliState(std::ostream& o) : out(o) {}
};

void run_lemma1(CliState& st) {
    CycleSystem sys = build_cycle_system(st.l1_n);
    st.out << "sizeY=" << sys.sizeY << "\n";
    if (!st.l1_augment.empty()) {
        sys = augment(sys, rat_from_string(st.l1_augment));
        st.out << "augmented k=" << sys.k << " sizeY=" << sys.sizeY
               << " extra_point=" << *sys.extra_point << "\n";
    }
    if (st.l1_verify) {
        CountReport rep = verify_counts(sys, st.l1_sample, st.l1_seed);
        st.out << "counts=" << (rep.ok ? "pass" : "fail") << " pairs=" << rep.pairs_checked
               << (rep.exhaustive ? " exhaustive" : " sampled") << "\n";
        st.out << "log_bound="
               << (rep.log_bound_holds ? (rep.log_bound_certified ? "certified" : "holds") : "fail")
               << "\n";
        for (const auto& v : rep.violations) st.out << "violation: " << v << "\n";
        if (!rep.ok || !rep.log_bound_holds) st.rc = 1;
    }
    if (!st.l1_out.empty()) {
        write_file(st.l1_out, encode_cycle_system(sys));
        st.out << "cycle system written to " << st.l1_out << "\n";
    }
}

void run_synth(CliState& st) {
    SynthesisSpec spec;
    if (st.sy_preset == "tree5") {
        spec = preset_tree5(st.sy_seed, parse_ladder(st.sy_ladder));
        if (!st.sy_group.empty() && st.sy_group != "w5")
            throw decode_error("preset tree5 runs on group w5");
    } else if (!st.sy_preset.empty()) {
        throw decode_error("unknown preset '" + st.sy_preset + "' (available: tree5)");
    } else {
        if (st.sy_group.empty() || st.sy_epsilon.empty() || st.sy_c.empty())
            throw decode_error("synth needs --preset tree5 or all of --group, --epsilon, --c");
        spec.ctx = parse_group(st.sy_group);
        spec.S0 = generator_set(spec.ctx);
        spec.epsilon = rat_from_string(st.sy_epsilon);
        spec.c = rat_from_string(st.sy_c);
        spec.p_ladder = parse_ladder(st.sy_ladder);
        spec.seed = st.sy_seed;
    }
    if (st.sy_mode != "certified" && st.sy_mode != "sampled")
        throw decode_error("--mode must be certified or sampled");
    spec.certified = st.sy_mode == "certified";
    spec.sample_count = st.sy_samples;
    spec.threads = st.sy_threads;
    spec.max_prime = st.sy_max_prime;

    auto t0 = std::chrono::steady_clock::now();
    SynthesisResult res = synthesize(spec);
    double wall = seconds_since(t0);

    const InjCertificate& c = res.certificate;
    st.out << "p=" << c.p << " m=" << res.ca.m << " n=" << c.n << " k=" << c.k
           << " families=" << c.families_checked
           << (c.probabilistic ? " sampled" : " certified") << " wall=" << format_seconds(wall)
           << "s\n";

    RunManifest man;
    man.command = st.command;
    man.seed = spec.seed;
    man.preset = st.sy_preset;
    man.wall_times["synthesize"] = wall;
    if (!st.sy_out.empty()) {
        std::string text = encode_ca(res.ca);
        write_file(st.sy_out, text);
        man.outputs[st.sy_out] = artifact_digest(text);
        st.out << "ca " << st.sy_out << " digest=" << man.outputs[st.sy_out] << "\n";
    }
    if (!st.sy_cert.empty()) {
        std::string text = encode_certificate(c);
        write_file(st.sy_cert, text);
        man.outputs[st.sy_cert] = artifact_digest(text);
        st.out << "certificate " << st.sy_cert << " digest=" << man.outputs[st.sy_cert] << "\n";
    }
    if (!st.sy_manifest.empty()) {
        write_file(st.sy_manifest, encode_manifest(man));
        st.out << "manifest " << st.sy_manifest << "\n";
    }
}

void run_analyze_goe(CliState& st) {
    LinearCA ca = load_ca(st.an_ca);
    ElementSet window = ball(ca.ctx, st.an_window_radius);
    std::optional<Pattern> res = goe_window(ca, window);
    if (res) {
        st.out << "garden of eden pattern on window of " << res->window.elems.size()
               << " cells\n";
        st.out << encode_pattern(ca.ctx, *res);
    } else {
        st.out << "none\n";
        st.rc = 1;
    }
}

void run_analyze_mep(CliState& st) {
    LinearCA ca = load_ca(st.an_ca);
    std::optional<MepPair> res = mep_search(ca, st.an_radius, st.an_work_cap);
    if (res) {
        st.out << "mutually erasable pair within ball(" << st.an_radius << ")\n";
        st.out << encode_pattern(ca.ctx, res->phi1);
        st.out << encode_pattern(ca.ctx, res->phi2);
    } else {
        st.out << "none\n";
        st.rc = 1;
    }
}

void run_analyze_cert(CliState& st) {
    LinearCA ca = load_ca(st.an_ca);
    ElementSet f = parse_support(ca.ctx, st.an_support);
    std::optional<PreinjCertificate> res = preinj_certificate(ca, f);
    if (res) {
        st.out << "pre-injectivity certificate at f=" << word_to_string(ca.ctx, res->f)
               << " sumX=" << res->sumX << "\n";
        st.out << encode_preinj_certificate(ca.ctx, *res);
    } else {
        st.out << "none\n";
        st.rc = 1;
    }
}

void run_analyze_mmprobe(CliState& st) {
    LinearCA ca = load_ca(st.an_ca);
    MMProbe probe = mm_probe(ca, st.an_probe_radius, st.an_probe_window);
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    st.out << "radius=" << probe.radius << " window_bound=" << probe.window_bound
           << " mep_found=" << yn(probe.mep_found) << " goe_found=" << yn(probe.goe_found)
           << " conclusive=" << yn(probe.conclusive) << "\n";
}

void run_muller(CliState& st) {
    LinearCA ca = muller_ca(st.mu_p);
    if (st.mu_demo) {
        GRMatrix m = to_groupring_matrix(ca);
        st.out << "group ring matrix over GF(" << st.mu_p << "):\n";
        for (size_t i = 0; i < m.rows; ++i) {
            st.out << "  [";
            for (size_t j = 0; j < m.cols; ++j) {
                if (j) st.out << ", ";
                st.out << gr_display(ca.ctx, m.at(i, j));
            }
            st.out << "]\n";
        }
        std::optional<Pattern> goe = goe_unit_witness(ca);
        if (goe) {
            st.out << "garden of eden: pattern (";
            for (size_t i = 0; i < goe->values[0].size(); ++i)
                st.out << (i ? " " : "") << goe->values[0][i];
            st.out << ") at e has no preimage\n";
        } else {
            st.out << "garden of eden: none\n";
        }
        std::optional<MepPair> mep = mep_search(ca, st.mu_radius);
        st.out << "mutually erasable pair within ball(" << st.mu_radius
               << "): " << (mep ? "found" : "none") << "\n";
        if (!goe || mep) st.rc = 1;
    }
    if (!st.mu_out.empty()) {
        write_file(st.mu_out, encode_ca(ca));
        st.out << "ca written to " << st.mu_out << "\n";
    }
}

void run_ore_solve(CliState& st) {
    GroupCtx ctx = parse_group(st.or_group);
    GRElem a = grelem_from_terms_string(ctx, st.or_p, st.or_a);
    GRElem s = grelem_from_terms_string(ctx, st.or_p, st.or_s);
    OreSolution sol = ore_solve(ctx, a, s, st.or_max_box);
    st.out << "t = " << grelem_to_terms_string(ctx, sol.t) << "\n";
    st.out << "b = " << grelem_to_terms_string(ctx, sol.b) << "\n";
    st.out << "box: " << sol.box.elems.size() << " points\n";
    st.out << "check: a*t == b*s\n";
}

void run_ore_witness(CliState& st) {
    LinearCA ca = st.or_source == "muller" ? muller_ca(st.or_p) : load_ca(st.or_source);
    FailureWitness w = failure_witness(ca);
    st.out << "group ring matrix " << w.M.rows << "x" << w.M.cols << " over GF(" << ca.p << ")\n";
    if (w.M.rows * w.M.cols <= 8) {
        for (size_t i = 0; i < w.M.rows; ++i) {
            st.out << "  [";
            for (size_t j = 0; j < w.M.cols; ++j) {
                if (j) st.out << ", ";
                st.out << gr_display(ca.ctx, w.M.at(i, j));
            }
            st.out << "]\n";
        }
    }
    if (w.zero_row) {
        st.out << "zero row: " << *w.zero_row << "\n";
        std::optional<MepPair> rep = injectivity_report(ca, st.or_radius);
        st.out << "kernel elements within ball(" << st.or_radius
               << "): " << (rep ? "found" : "none") << "\n";
    } else {
        st.out << "not a failure witness: every row has a nonzero entry\n";
        st.rc = 1;
    }
}

void run_expansion(CliState& st) {
    GroupCtx ctx = parse_group(st.ex_group);
    ElementSet s;
    if (st.ex_set == "gens") {
        s = generator_set(ctx);
    } else if (st.ex_set == "preset") {
        s = preset_expansion_set(ctx);
    } else {
        throw decode_error("--set must be preset or gens");
    }
    ExpansionClaim claim;
    if (st.ex_claim.empty()) {
        if (ctx == GroupCtx::w5()) {
            claim = preset_claim_w5();
        } else if (ctx == GroupCtx::w3()) {
            claim = preset_claim_w3();
        } else {
            throw decode_error("no preset claim for this group; pass --claim c,b");
        }
    } else {
        size_t comma = st.ex_claim.find(',');
        if (comma == std::string::npos) throw decode_error("--claim wants c,b");
        claim.c = rat_from_string(st.ex_claim.substr(0, comma));
        claim.b = rat_from_string(st.ex_claim.substr(comma + 1));
    }
    ExpansionSearch search;
    search.radius = st.ex_radius;
    search.max_universe = st.ex_max_universe;
    if (st.ex_mode == "sampled") {
        search.kind = ExpansionSearch::Kind::SampledBall;
        search.sample_count = st.ex_samples;
        search.max_subset_size = st.ex_max_subset;
        search.seed = st.ex_seed;
    } else if (st.ex_mode != "exhaustive") {
        throw decode_error("--mode must be exhaustive or sampled");
    }
    ExpansionReport rep = expansion_report(ctx, s, claim, search);
    st.out << rep.search_description << "\n";
    st.out << "sets_checked=" << rep.sets_checked << " min_slack=" << rat_to_string(rep.min_slack)
           << (rep.exhaustive ? " exhaustive" : "") << "\n";
    st.out << "tightest F (#F=" << rep.witness.elems.size()
           << "): " << set_display(ctx, rep.witness) << "\n";
    if (rep.min_slack < 0) st.rc = 1;
}

void build_app(CLI::App& app, CliState& st) {
    app.name("edenca");
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CLI::App* l1 = app.add_subcommand("lemma1", "build and check the cycle system Y for S_n");
    l1->add_option("--n", st.l1_n, "symmetric group degree")->required();
    l1->add_flag("--verify", st.l1_verify, "check the intersection counts and the log bound");
    l1->add_option("--augment", st.l1_augment, "replicate to meet ratio c (exact rational)");
    l1->add_option("--sample", st.l1_sample, "pair sample size for large n")->capture_default_str();
    l1->add_option("--seed", st.l1_seed, "sampling seed")->capture_default_str();
    l1->add_option("--out", st.l1_out, "write the system to this file");
    l1->callback([&st] { run_lemma1(st); });

    CLI::App* sy = app.add_subcommand("synth", "synthesize a certified non-pre-injective CA");
    sy->add_option("--group", st.sy_group, "carrier group (w3|w5|z|free:N|abelian:N|cyclics:a,b,...)");
    sy->add_option("--preset", st.sy_preset, "named instance (tree5)");
    sy->add_option("--epsilon", st.sy_epsilon, "expansion surplus, exact rational");
    sy->add_option("--c", st.sy_c, "certified expansion ratio for the generator set");
    sy->add_option("--p-ladder", st.sy_ladder, "field sizes to try")->capture_default_str();
    sy->add_option("--seed", st.sy_seed, "master seed")->capture_default_str();
    sy->add_option("--mode", st.sy_mode, "certified|sampled")->capture_default_str();
    sy->add_option("--samples", st.sy_samples, "families per sweep in sampled mode")
        ->capture_default_str();
    sy->add_option("--threads", st.sy_threads, "verification worker threads")
        ->capture_default_str();
    sy->add_option("--max-prime", st.sy_max_prime, "ladder cap")->capture_default_str();
    sy->add_option("--out", st.sy_out, "write the CA here");
    sy->add_option("--cert", st.sy_cert, "write the injectivity certificate here");
    sy->add_option("--manifest", st.sy_manifest, "write the run manifest here");
    sy->callback([&st] { run_synth(st); });

    CLI::App* an = app.add_subcommand("analyze", "analyze a stored CA");
    an->require_subcommand(1);
    CLI::App* goe = an->add_subcommand("goe", "search for a garden of eden pattern");
    goe->add_option("--ca", st.an_ca, "CA file")->required();
    goe->add_option("--window-radius", st.an_window_radius, "window = ball of this radius")
        ->capture_default_str();
    goe->callback([&st] { run_analyze_goe(st); });
    CLI::App* mep = an->add_subcommand("mep", "search for mutually erasable patterns");
    mep->add_option("--ca", st.an_ca, "CA file")->required();
    mep->add_option("--radius", st.an_radius, "support ball radius")->capture_default_str();
    mep->add_option("--work-cap", st.an_work_cap, "dense elimination budget")
        ->capture_default_str();
    mep->callback([&st] { run_analyze_mep(st); });
    CLI::App* cert = an->add_subcommand("cert", "pre-injectivity certificate for a support set");
    cert->add_option("--ca", st.an_ca, "CA file (synthesized, with provenance)")->required();
    cert->add_option("--support", st.an_support, "JSON array of word strings")->required();
    cert->callback([&st] { run_analyze_cert(st); });
    CLI::App* probe = an->add_subcommand("mmprobe", "bounded two-sided probe on abelian carriers");
    probe->add_option("--ca", st.an_ca, "CA file")->required();
    probe->add_option("--radius", st.an_probe_radius, "kernel search radius")
        ->capture_default_str();
    probe->add_option("--window", st.an_probe_window, "max GOE window size")
        ->capture_default_str();
    probe->callback([&st] { run_analyze_mmprobe(st); });

    CLI::App* mu = app.add_subcommand("muller", "the hand-built W3 example");
    mu->add_option("--p", st.mu_p, "field size")->capture_default_str();
    mu->add_flag("--demo", st.mu_demo, "print the matrix, a GOE witness and the MEP search");
    mu->add_option("--radius", st.mu_radius, "MEP search radius for the demo")
        ->capture_default_str();
    mu->add_option("--out", st.mu_out, "write the CA here");
    mu->callback([&st] { run_muller(st); });

    CLI::App* ore = app.add_subcommand("ore", "Ore localization helpers");
    ore->require_subcommand(1);
    CLI::App* osol = ore->add_subcommand("solve", "solve a*t = b*s in a Folner box");
    osol->add_option("--group", st.or_group, "abelian carrier (z|abelian:N)")
        ->capture_default_str();
    osol->add_option("--p", st.or_p, "field size")->required();
    osol->add_option("--a", st.or_a, "numerator, terms like 'e:1 + [2]:4' or '0'")->required();
    osol->add_option("--s", st.or_s, "denominator, same grammar, nonzero")->required();
    osol->add_option("--max-box", st.or_max_box, "Folner box size cap")->capture_default_str();
    osol->callback([&st] { run_ore_solve(st); });
    CLI::App* owit = ore->add_subcommand("witness", "zero row of the group ring matrix");
    owit->add_option("--source", st.or_source, "muller or a CA file")->capture_default_str();
    owit->add_option("--p", st.or_p, "field size for the muller source")->capture_default_str();
    owit->add_option("--radius", st.or_radius, "kernel cross-check radius")
        ->capture_default_str();
    owit->callback([&st] { run_ore_witness(st); });

    CLI::App* ex = app.add_subcommand("expansion", "desk-check an expansion claim #(SF) >= c#F + b");
    ex->add_option("--group", st.ex_group, "carrier group")->required();
    ex->add_option("--radius", st.ex_radius, "enumerate F inside this ball")
        ->capture_default_str();
    ex->add_option("--claim", st.ex_claim, "c,b as exact rationals (default: group preset)");
    ex->add_option("--set", st.ex_set, "preset|gens")->capture_default_str();
    ex->add_option("--max-universe", st.ex_max_universe, "exhaustive ball size cap")
        ->capture_default_str();
    ex->add_option("--mode", st.ex_mode, "exhaustive|sampled")->capture_default_str();
    ex->add_option("--samples", st.ex_samples, "sampled mode: number of sets")
        ->capture_default_str();
    ex->add_option("--max-subset", st.ex_max_subset, "sampled mode: max #F")
        ->capture_default_str();
    ex->add_option("--seed", st.ex_seed, "sampled mode seed")->capture_default_str();
    ex->callback([&st] { run_expansion(st); });
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"linear cellular automata on groups: synthesis, certificates, Ore localization"};
    CliState st(out);
    st.command = join_args(args);
    build_app(app, st);
    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    } catch (const resource_cap_error& e) {
        err << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const decode_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return st.rc;
}

}  // namespace eden
