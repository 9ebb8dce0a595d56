#pragma once

#include <cstdint>
#include <initializer_list>

namespace treecube {

// SplitMix64 finalizer. Used both as a mixing function for seed derivation
// and as the engine behind all randomized pipeline stages, so that results
// are reproducible across platforms (std::uniform_int_distribution is not).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Folds a tuple of stream identifiers (stage tag, piece root, attempt, ...)
// into one sub-seed. Schedule-independent: only the identifiers matter.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t acc = 0x243f6a8885a308d3ULL;  // arbitrary non-zero start
    for (std::uint64_t p : parts) acc = mix64(acc ^ p);
    return acc;
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound) via rejection on the top range.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // +1 or -1 with equal probability.
    int sign() { return (next() >> 63) ? 1 : -1; }

private:
    std::uint64_t state_;
};

}  // namespace treecube
