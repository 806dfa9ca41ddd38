#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lsp {

// 64-bit seed for a deterministic pseudo-random stream. Identical seed and
// parameters give bit-identical output on the same platform.
struct Seed {
    uint64_t value = 0;
};

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives an independent substream seed. Used to keep, e.g., the edge-weight
// stream and the edge-selection stream of a generator decorrelated, and to
// give each trial/update of an experiment its own stream.
inline Seed derive_seed(Seed base, uint64_t salt) {
    uint64_t s = base.value + 0x9e3779b97f4a7c15ull * (salt + 1);
    return Seed{splitmix64(s)};
}

// Thin wrapper around mt19937_64 with explicit, platform-stable mappings to
// the distributions we need (the standard library distribution objects are
// not bit-stable across implementations).
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed.value) {}

    // Uniform in [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in (0,1); rejects the single zero value.
    double uniform01_positive() {
        double u = uniform01();
        while (u == 0.0) u = uniform01();
        return u;
    }

    // Exponential with mean 1, strictly positive.
    double exponential1() { return -std::log1p(-uniform01_positive()); }

    // Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps the
    // distribution exact.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace lsp
