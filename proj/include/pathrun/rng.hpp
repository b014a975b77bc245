#pragma once

#include <cstdint>

namespace pathrun {

// Counter-based randomness: every draw is a pure function of (seed, counter,
// salt), so parallel and serial generation agree bit-exactly and any frame's
// draw can be replayed in isolation.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_rand(std::uint64_t seed, std::uint64_t counter,
                                  std::uint64_t salt = 0) {
    return mix64(mix64(mix64(seed) ^ counter) ^ salt);
}

// Per-run seed for run index i within a batch.
inline std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t index) {
    return counter_rand(base_seed, index, 0x72756E7365656473ULL);
}

// Uniform in [0, 1): 53 mantissa bits.
inline double uniform_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Unbiased uniform draw in [0, n) by rejection; extra draws re-salt the
// counter, keeping the result a pure function of the key.
inline std::uint64_t uniform_below(std::uint64_t seed, std::uint64_t counter, std::uint64_t salt,
                                   std::uint64_t n) {
    const std::uint64_t limit = n * ((~0ULL) / n);  // largest multiple of n
    for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t v = counter_rand(seed, counter, salt + (attempt << 48));
        if (v < limit) return v % n;
    }
}

}  // namespace pathrun
