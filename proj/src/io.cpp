#include "eden/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace eden {

namespace {

using nlohmann::json;

std::string seal(json j) {
    j.erase("digest");
    std::string body = j.dump();
    j["digest"] = hex64(fnv1a64(body));
    return j.dump() + "\n";
}

const json& field(const json& j, const char* name, const std::string& where) {
    auto it = j.find(name);
    if (it == j.end()) throw decode_error(where + ": missing field '" + name + "'");
    return *it;
}

uint64_t field_u64(const json& j, const char* name, const std::string& where) {
    const json& f = field(j, name, where);
    if (!f.is_number_unsigned())
        throw decode_error(where + ": field '" + name + "' must be a nonnegative integer");
    return f.get<uint64_t>();
}

bool field_bool(const json& j, const char* name, const std::string& where) {
    const json& f = field(j, name, where);
    if (!f.is_boolean()) throw decode_error(where + ": field '" + name + "' must be a boolean");
    return f.get<bool>();
}

std::string field_string(const json& j, const char* name, const std::string& where) {
    const json& f = field(j, name, where);
    if (!f.is_string()) throw decode_error(where + ": field '" + name + "' must be a string");
    return f.get<std::string>();
}

const json& field_array(const json& j, const char* name, const std::string& where) {
    const json& f = field(j, name, where);
    if (!f.is_array()) throw decode_error(where + ": field '" + name + "' must be an array");
    return f;
}

json unseal(std::string_view text, const std::string& where) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw decode_error(where + ": " + e.what());
    }
    if (!j.is_object()) throw decode_error(where + ": not a JSON object");
    if (j.contains("digest")) {
        std::string digest = field_string(j, "digest", where);
        j.erase("digest");
        if (hex64(fnv1a64(j.dump())) != digest) throw decode_error(where + ": digest mismatch");
    }
    return j;
}

json jgroup(const GroupCtx& ctx) {
    json j;
    j["family"] = family_name(ctx.family);
    j["params"] = ctx.params;
    return j;
}

GroupCtx pgroup(const json& j, const std::string& where) {
    if (!j.is_object()) throw decode_error(where + ": must be an object");
    GroupFamily fam = family_from_name(field_string(j, "family", where));
    const json& pj = field_array(j, "params", where);
    std::vector<int64_t> params;
    for (size_t i = 0; i < pj.size(); ++i) {
        if (!pj[i].is_number_integer())
            throw decode_error(where + ": params[" + std::to_string(i) + "] must be an integer");
        params.push_back(pj[i].get<int64_t>());
    }
    switch (fam) {
        case GroupFamily::FreeProductOfCyclics:
            return GroupCtx::free_product_of_cyclics(params);
        case GroupFamily::FreeGroup:
            if (params.size() != 1) throw decode_error(where + ": free_group takes one parameter");
            return GroupCtx::free_group(static_cast<int>(params[0]));
        case GroupFamily::FreeAbelian:
            if (params.size() != 1)
                throw decode_error(where + ": free_abelian takes one parameter");
            return GroupCtx::free_abelian(static_cast<int>(params[0]));
    }
    throw decode_error(where + ": unknown family");
}

json jmatrix(const FFMatrix& m) {
    json t = json::array();
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) t.push_back({i, j, m.at(i, j)});
    json j;
    j["p"] = m.p;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["triplets"] = std::move(t);
    return j;
}

FFMatrix pmatrix(const json& j, const std::string& where) {
    if (!j.is_object()) throw decode_error(where + ": must be an object");
    uint64_t p = field_u64(j, "p", where);
    uint64_t rows = field_u64(j, "rows", where);
    uint64_t cols = field_u64(j, "cols", where);
    if (p >= (uint64_t{1} << 31)) throw decode_error(where + ": modulus out of range");
    FFMatrix m;
    try {
        m = make_matrix(static_cast<uint32_t>(p), rows, cols);
    } catch (const decode_error& e) {
        throw decode_error(where + ": " + e.what());
    }
    const json& t = field_array(j, "triplets", where);
    int64_t last = -1;
    for (size_t k = 0; k < t.size(); ++k) {
        std::string at = where + ".triplets[" + std::to_string(k) + "]";
        const json& e = t[k];
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() ||
            !e[1].is_number_unsigned() || !e[2].is_number_unsigned())
            throw decode_error(at + ": expected [row, col, value] of nonnegative integers");
        uint64_t i = e[0].get<uint64_t>();
        uint64_t c = e[1].get<uint64_t>();
        uint64_t v = e[2].get<uint64_t>();
        if (i >= rows || c >= cols) throw decode_error(at + ": index out of range");
        int64_t pos = static_cast<int64_t>(i * cols + c);
        if (pos <= last) throw decode_error(at + ": out of row-major order");
        last = pos;
        if (v == 0 || v >= p) throw decode_error(at + ": value out of range");
        m.at(i, c) = static_cast<uint32_t>(v);
    }
    return m;
}

std::string bits_to_hex(const boost::dynamic_bitset<>& b) {
    size_t digits = (b.size() + 3) / 4;
    std::string s(digits, '0');
    for (size_t d = 0; d < digits; ++d) {
        unsigned v = 0;
        for (unsigned bit = 0; bit < 4; ++bit) {
            size_t i = (digits - 1 - d) * 4 + bit;
            if (i < b.size() && b.test(i)) v |= 1u << bit;
        }
        s[d] = "0123456789abcdef"[v];
    }
    return s;
}

boost::dynamic_bitset<> hex_to_bits(const std::string& s, size_t n, const std::string& where) {
    size_t digits = (n + 3) / 4;
    if (s.size() != digits) throw decode_error(where + ": hex string length mismatch");
    boost::dynamic_bitset<> b(n);
    for (size_t d = 0; d < digits; ++d) {
        char c = s[d];
        unsigned v;
        if (c >= '0' && c <= '9')
            v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = static_cast<unsigned>(c - 'a') + 10;
        else
            throw decode_error(where + ": invalid hex digit");
        for (unsigned bit = 0; bit < 4; ++bit) {
            if (!(v & (1u << bit))) continue;
            size_t i = (digits - 1 - d) * 4 + bit;
            if (i >= n) throw decode_error(where + ": bit set beyond sizeY");
            b.set(i);
        }
    }
    return b;
}

json jcycle(const CycleSystem& sys) {
    json x = json::array();
    for (const boost::dynamic_bitset<>& b : sys.X) x.push_back(bits_to_hex(b));
    json j;
    j["n"] = sys.n;
    j["k"] = sys.k;
    j["sizeY"] = sys.sizeY;
    j["X"] = std::move(x);
    if (sys.extra_point) j["extra_point"] = *sys.extra_point;
    return j;
}

CycleSystem pcycle(const json& j, const std::string& where) {
    if (!j.is_object()) throw decode_error(where + ": must be an object");
    CycleSystem sys;
    uint64_t n = field_u64(j, "n", where);
    if (n < 1 || n > 8) throw decode_error(where + ": n out of range");
    sys.n = static_cast<int>(n);
    sys.k = field_u64(j, "k", where);
    if (sys.k < 1) throw decode_error(where + ": k must be positive");
    sys.sizeY = field_u64(j, "sizeY", where);
    const json& x = field_array(j, "X", where);
    if (x.size() != n) throw decode_error(where + ": X must list one subset per point");
    for (size_t i = 0; i < x.size(); ++i) {
        std::string at = where + ".X[" + std::to_string(i) + "]";
        if (!x[i].is_string()) throw decode_error(at + ": must be a hex string");
        sys.X.push_back(hex_to_bits(x[i].get<std::string>(), sys.sizeY, at));
    }
    if (j.contains("extra_point")) {
        uint64_t e = field_u64(j, "extra_point", where);
        if (e >= sys.sizeY) throw decode_error(where + ": extra_point out of range");
        for (size_t i = 0; i < sys.X.size(); ++i)
            if (sys.X[i].test(e))
                throw decode_error(where + ": extra_point must lie outside every X_i");
        sys.extra_point = e;
    }
    return sys;
}

Word pword(const GroupCtx& ctx, const json& j, const std::string& where) {
    if (!j.is_string()) throw decode_error(where + ": must be a word string");
    try {
        return word_from_string(ctx, j.get<std::string>());
    } catch (const decode_error& e) {
        throw decode_error(where + ": " + e.what());
    }
}

}  // namespace

std::string encode_group(const GroupCtx& ctx) { return seal(jgroup(ctx)); }

GroupCtx decode_group(std::string_view text) { return pgroup(unseal(text, "group"), "group"); }

std::string encode_matrix(const FFMatrix& m) { return seal(jmatrix(m)); }

FFMatrix decode_matrix(std::string_view text) { return pmatrix(unseal(text, "matrix"), "matrix"); }

std::string encode_cycle_system(const CycleSystem& sys) { return seal(jcycle(sys)); }

CycleSystem decode_cycle_system(std::string_view text) {
    return pcycle(unseal(text, "cycle_system"), "cycle_system");
}

std::string encode_ca(const LinearCA& ca) {
    json j;
    j["group"] = jgroup(ca.ctx);
    j["p"] = ca.p;
    j["m"] = ca.m;
    json mem = json::array();
    for (const Word& s : ca.S.elems) mem.push_back(word_to_string(ca.ctx, s));
    j["memory"] = std::move(mem);
    json alpha = json::array();
    for (const FFMatrix& a : ca.alpha) alpha.push_back(jmatrix(a));
    j["alpha"] = std::move(alpha);
    if (ca.provenance) j["provenance"] = jcycle(*ca.provenance);
    return seal(std::move(j));
}

LinearCA decode_ca(std::string_view text) {
    json j = unseal(text, "ca");
    LinearCA ca;
    ca.ctx = pgroup(field(j, "group", "ca"), "ca.group");
    ca.p = static_cast<uint32_t>(field_u64(j, "p", "ca"));
    ca.m = field_u64(j, "m", "ca");
    const json& mem = field_array(j, "memory", "ca");
    std::vector<Word> words;
    for (size_t i = 0; i < mem.size(); ++i) {
        std::string at = "ca.memory[" + std::to_string(i) + "]";
        Word w = pword(ca.ctx, mem[i], at);
        if (!words.empty() && !(words.back() < w))
            throw decode_error(at + ": out of canonical order");
        words.push_back(std::move(w));
    }
    ca.S.elems = std::move(words);
    const json& alpha = field_array(j, "alpha", "ca");
    for (size_t i = 0; i < alpha.size(); ++i)
        ca.alpha.push_back(pmatrix(alpha[i], "ca.alpha[" + std::to_string(i) + "]"));
    if (j.contains("provenance"))
        ca.provenance = pcycle(field(j, "provenance", "ca"), "ca.provenance");
    validate_ca(ca);
    return ca;
}

std::string encode_config(const GroupCtx& ctx, const Config& phi) {
    json entries = json::array();
    for (const auto& [g, v] : phi.cells) entries.push_back({word_to_string(ctx, g), v});
    json j;
    j["entries"] = std::move(entries);
    return seal(std::move(j));
}

Config decode_config(const GroupCtx& ctx, uint32_t p, std::string_view text) {
    json j = unseal(text, "config");
    const json& entries = field_array(j, "entries", "config");
    Config phi;
    std::optional<size_t> m;
    std::optional<Word> prev;
    for (size_t i = 0; i < entries.size(); ++i) {
        std::string at = "config.entries[" + std::to_string(i) + "]";
        const json& e = entries[i];
        if (!e.is_array() || e.size() != 2 || !e[1].is_array())
            throw decode_error(at + ": expected [word, values]");
        Word g = pword(ctx, e[0], at);
        if (prev && !(*prev < g)) throw decode_error(at + ": out of canonical order");
        prev = g;
        std::vector<uint32_t> v;
        bool nonzero = false;
        for (const json& c : e[1]) {
            if (!c.is_number_unsigned() || c.get<uint64_t>() >= p)
                throw decode_error(at + ": value out of range");
            v.push_back(c.get<uint32_t>());
            nonzero = nonzero || v.back() != 0;
        }
        if (!nonzero) throw decode_error(at + ": zero vector stored");
        if (m && v.size() != *m) throw decode_error(at + ": inconsistent vector length");
        m = v.size();
        phi.cells[std::move(g)] = std::move(v);
    }
    return phi;
}

std::string encode_grelem(const GroupCtx& ctx, const GRElem& a) {
    json terms = json::array();
    for (const auto& [g, c] : a.terms)
        terms.push_back({word_to_string(ctx, g), json::array({c})});
    json j;
    j["ctx"] = jgroup(ctx);
    j["p"] = a.p;
    j["d"] = 1;
    j["terms"] = std::move(terms);
    return seal(std::move(j));
}

std::pair<GroupCtx, GRElem> decode_grelem(std::string_view text) {
    json j = unseal(text, "grelem");
    GroupCtx ctx = pgroup(field(j, "ctx", "grelem"), "grelem.ctx");
    GRElem a;
    a.p = static_cast<uint32_t>(field_u64(j, "p", "grelem"));
    if (field_u64(j, "d", "grelem") != 1)
        throw decode_error("grelem: only prime-field elements (d = 1) are supported");
    const json& terms = field_array(j, "terms", "grelem");
    std::optional<Word> prev;
    for (size_t i = 0; i < terms.size(); ++i) {
        std::string at = "grelem.terms[" + std::to_string(i) + "]";
        const json& e = terms[i];
        if (!e.is_array() || e.size() != 2 || !e[1].is_array() || e[1].size() != 1 ||
            !e[1][0].is_number_unsigned())
            throw decode_error(at + ": expected [word, [coeff]]");
        Word g = pword(ctx, e[0], at);
        if (prev && !(*prev < g)) throw decode_error(at + ": out of canonical order");
        prev = g;
        uint64_t c = e[1][0].get<uint64_t>();
        if (c == 0 || c >= a.p) throw decode_error(at + ": coefficient out of range");
        a.terms[std::move(g)] = static_cast<uint32_t>(c);
    }
    return {std::move(ctx), std::move(a)};
}

std::string encode_certificate(const InjCertificate& cert) {
    json fams = json::array();
    for (const FamilyDescriptor& d : cert.maximal_family_descriptors) {
        json f;
        f["sizes"] = d.sizes;
        f["choices_digest"] = d.choices_digest;
        f["families"] = d.families;
        fams.push_back(std::move(f));
    }
    json j;
    j["n"] = cert.n;
    j["k"] = cert.k;
    j["sizeY"] = cert.sizeY;
    j["p"] = cert.p;
    j["seed"] = cert.seed;
    j["families_checked"] = cert.families_checked;
    j["maximal_family_descriptors"] = std::move(fams);
    j["all_kernel_dims_zero"] = cert.all_kernel_dims_zero;
    j["probabilistic"] = cert.probabilistic;
    return seal(std::move(j));
}

InjCertificate decode_certificate(std::string_view text) {
    json j = unseal(text, "certificate");
    InjCertificate cert;
    uint64_t n = field_u64(j, "n", "certificate");
    if (n < 1 || n > 8) throw decode_error("certificate: n out of range");
    cert.n = static_cast<int>(n);
    cert.k = field_u64(j, "k", "certificate");
    cert.sizeY = field_u64(j, "sizeY", "certificate");
    cert.p = static_cast<uint32_t>(field_u64(j, "p", "certificate"));
    cert.seed = field_u64(j, "seed", "certificate");
    cert.families_checked = field_u64(j, "families_checked", "certificate");
    const json& fams = field_array(j, "maximal_family_descriptors", "certificate");
    for (size_t i = 0; i < fams.size(); ++i) {
        std::string at = "certificate.maximal_family_descriptors[" + std::to_string(i) + "]";
        const json& f = fams[i];
        if (!f.is_object()) throw decode_error(at + ": must be an object");
        FamilyDescriptor d;
        const json& sizes = field_array(f, "sizes", at);
        for (const json& s : sizes) {
            if (!s.is_number_unsigned() || s.get<uint64_t>() < 1 || s.get<uint64_t>() > n)
                throw decode_error(at + ": size out of range");
            d.sizes.push_back(s.get<int>());
        }
        d.choices_digest = field_string(f, "choices_digest", at);
        d.families = field_u64(f, "families", at);
        cert.maximal_family_descriptors.push_back(std::move(d));
    }
    cert.all_kernel_dims_zero = field_bool(j, "all_kernel_dims_zero", "certificate");
    cert.probabilistic = field_bool(j, "probabilistic", "certificate");
    cert.wall_time = 0.0;
    return cert;
}

std::string encode_pattern(const GroupCtx& ctx, const Pattern& q) {
    json win = json::array();
    for (const Word& g : q.window.elems) win.push_back(word_to_string(ctx, g));
    json j;
    j["window"] = std::move(win);
    j["values"] = q.values;
    return seal(std::move(j));
}

std::string encode_preinj_certificate(const GroupCtx& ctx, const PreinjCertificate& cert) {
    json f = json::array();
    for (const Word& g : cert.F.elems) f.push_back(word_to_string(ctx, g));
    json rho = json::array();
    for (const auto& [g, r] : cert.rho) rho.push_back({word_to_string(ctx, g), rat_to_string(r)});
    json j;
    j["F"] = std::move(f);
    j["f"] = word_to_string(ctx, cert.f);
    j["rho"] = std::move(rho);
    j["Tfamily"] = cert.Tfamily;
    j["sumX"] = cert.sumX;
    j["kernel_dim"] = cert.kernel_dim;
    return seal(std::move(j));
}

GRElem grelem_from_terms_string(const GroupCtx& ctx, uint32_t p, std::string_view s) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    std::string_view body = trim(s);
    GRElem out = gr_zero(p);
    if (body == "0") return out;
    if (body.empty()) throw decode_error("group ring terms: empty input");
    size_t start = 0;
    while (start <= body.size()) {
        size_t end = body.find('+', start);
        if (end == std::string_view::npos) end = body.size();
        std::string_view tok = trim(body.substr(start, end - start));
        size_t colon = tok.rfind(':');
        if (tok.empty() || colon == std::string_view::npos)
            throw decode_error("group ring terms: expected 'word:coeff' near '" +
                               std::string(tok) + "'");
        Word g = word_from_string(ctx, trim(tok.substr(0, colon)));
        std::string cstr(trim(tok.substr(colon + 1)));
        size_t pos = 0;
        unsigned long c;
        try {
            c = std::stoul(cstr, &pos);
        } catch (const std::exception&) {
            throw decode_error("group ring terms: bad coefficient '" + cstr + "'");
        }
        if (pos != cstr.size())
            throw decode_error("group ring terms: bad coefficient '" + cstr + "'");
        out = gr_add(out, gr_monomial(ctx, p, g, static_cast<uint32_t>(c % p)));
        start = end + 1;
    }
    return out;
}

std::string grelem_to_terms_string(const GroupCtx& ctx, const GRElem& a) {
    if (gr_is_zero(a)) return "0";
    std::string out;
    for (const auto& [g, c] : a.terms) {
        if (!out.empty()) out += "+";
        out += word_to_string(ctx, g) + ":" + std::to_string(c);
    }
    return out;
}

std::string encode_manifest(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["seed"] = m.seed;
    j["preset"] = m.preset;
    j["version"] = m.version;
    j["prng"] = m.prng;
    j["wall_times"] = m.wall_times;
    j["outputs"] = m.outputs;
    return seal(std::move(j));
}

std::string artifact_digest(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw decode_error(std::string("artifact: ") + e.what());
    }
    if (!j.is_object() || !j.contains("digest") || !j["digest"].is_string())
        throw decode_error("artifact: missing digest");
    return j["digest"].get<std::string>();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw decode_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw decode_error("cannot write file: " + path);
    out << text;
    if (!out) throw decode_error("cannot write file: " + path);
}

}  // namespace eden
