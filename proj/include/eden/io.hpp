#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "eden/analysis.hpp"
#include "eden/ca.hpp"
#include "eden/common.hpp"
#include "eden/groupring.hpp"
#include "eden/lemma1.hpp"
#include "eden/prng.hpp"
#include "eden/synth.hpp"

namespace eden {

// Artifacts are canonical JSON: sorted keys, compact separators, one
// trailing newline, and a top-level "digest" field sealing the rest of
// the object. Decoders verify the digest when the field is present and
// report malformed input through decode_error with the offending key
// in the message.

std::string encode_group(const GroupCtx& ctx);
GroupCtx decode_group(std::string_view text);

std::string encode_matrix(const FFMatrix& m);
FFMatrix decode_matrix(std::string_view text);

std::string encode_cycle_system(const CycleSystem& sys);
CycleSystem decode_cycle_system(std::string_view text);

std::string encode_ca(const LinearCA& ca);
LinearCA decode_ca(std::string_view text);

std::string encode_config(const GroupCtx& ctx, const Config& phi);
Config decode_config(const GroupCtx& ctx, uint32_t p, std::string_view text);

std::string encode_grelem(const GroupCtx& ctx, const GRElem& a);
std::pair<GroupCtx, GRElem> decode_grelem(std::string_view text);

// The certificate file carries every certificate field except the wall
// time, which varies between runs and would break byte-identical
// re-runs; decode fills it with zero.
std::string encode_certificate(const InjCertificate& cert);
InjCertificate decode_certificate(std::string_view text);

std::string encode_pattern(const GroupCtx& ctx, const Pattern& q);
std::string encode_preinj_certificate(const GroupCtx& ctx, const PreinjCertificate& cert);

// Inline group-ring syntax: terms "word:coeff" joined by "+", with
// optional whitespace; "0" denotes the zero element.
GRElem grelem_from_terms_string(const GroupCtx& ctx, uint32_t p, std::string_view s);
std::string grelem_to_terms_string(const GroupCtx& ctx, const GRElem& a);

struct RunManifest {
    std::string command;
    uint64_t seed = 0;
    std::string preset;
    std::string version = kVersion;
    std::string prng = kPrngName;
    std::map<std::string, double> wall_times;
    std::map<std::string, std::string> outputs;  // path -> embedded digest
};

std::string encode_manifest(const RunManifest& m);

// Digest embedded in a sealed artifact text, for manifests.
std::string artifact_digest(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace eden
