#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eden {

inline constexpr const char* kVersion = "0.1.0";

// Raised when a computation would exceed an explicit resource cap
// (subset enumeration limits, matrix size limits, ladder exhaustion).
class resource_cap_error : public std::runtime_error {
public:
    explicit resource_cap_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an input artifact fails to parse or fails validation.
class decode_error : public std::runtime_error {
public:
    explicit decode_error(const std::string& what) : std::runtime_error(what) {}
};

// FNV-1a, 64-bit. Used for artifact self-digests and log fingerprints.
inline uint64_t fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ull) {
    uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= static_cast<uint64_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(uint64_t v);

}  // namespace eden
