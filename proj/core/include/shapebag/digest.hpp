#pragma once

#include <cstdint>
#include <string_view>

namespace shapebag {

/// FNV-1a 64-bit content digest; stable fingerprint for configs and inputs.
inline uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace shapebag
