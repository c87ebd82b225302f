#pragma once

#include <cstdint>

namespace dnls {

// SplitMix64: a counter-based generator. The whole stream is a pure
// function of the seed, so identical (seed, size) inputs reproduce the
// same values on every platform and under any scheduling order.
struct SplitMix64 {
    std::uint64_t state;

    explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

constexpr std::uint64_t mix_bits(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for one grid point of a sweep: decorrelates (base, a, b) triples
// while staying a pure function of them.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix_bits(base ^ 0x9E3779B97F4A7C15ULL);
    h = mix_bits(h ^ (a + 0xBF58476D1CE4E5B9ULL));
    h = mix_bits(h ^ (b + 0x94D049BB133111EBULL));
    return h;
}

}  // namespace dnls
