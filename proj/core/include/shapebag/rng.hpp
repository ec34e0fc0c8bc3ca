#pragma once

#include <cstdint>
#include <random>

namespace shapebag {

/// Stable mixing of a seed into independent sub-stream seeds. Every RNG
/// consumer derives its own stream so stage order never shifts another
/// stage's draws.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
}

/// Uniform double in [a, b). Hand-rolled from raw 53-bit draws because the
/// standard distributions are implementation-defined and would break
/// cross-platform byte-identical artifacts.
inline double uniform_double(std::mt19937_64& rng, double a, double b) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
}

/// Uniform integer in [0, n). Rejection sampling, bias-free.
inline uint64_t uniform_index(std::mt19937_64& rng, uint64_t n) {
    const uint64_t threshold = (0 - n) % n;
    for (;;) {
        const uint64_t x = rng();
        if (x >= threshold) return x % n;
    }
}

}  // namespace shapebag
