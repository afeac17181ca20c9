#pragma once

#include <cstdint>

namespace gtssm {

// SplitMix64. Fixed constants, no platform dependence; this is the
// generator behind every seeded stream in the project (datasets,
// random verification, mutation tests).  Contract version: splitmix64/1.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) via rejection sampling (no modulo bias).
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        std::uint64_t u = next();
        while (u > limit) u = next();
        return u % bound;
    }

    // double in [0, 1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// SplitMix64's finalizer: a bijective avalanche permutation of 2^64.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Independent stream for record/sequence `index` under master `seed`.
// The start states are scattered through mix64 so distinct indices land in
// disjoint counter regions (consecutive raw offsets would overlap, since
// the generator itself just walks the counter).  O(1), shardable by index.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                      mix64(index + 0xD1342543DE82EF95ULL));
}

}  // namespace gtssm
