#pragma once

#include <cstdint>

namespace tgl {

// Small splittable PRNG (splitmix64). Every stochastic operation in the
// library takes an explicit seed and derives independent child streams via
// split(), so results are reproducible byte-for-byte across runs and across
// worker counts.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Independent child stream; advances this stream by one step.
    SplitMix64 split() { return SplitMix64(next() ^ 0x5851f42d4c957f2dull); }

    // Unbiased uniform draw from [0, bound).
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool coin() { return (next() >> 63) != 0; }

    int sign() { return coin() ? 1 : -1; }

    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace tgl
