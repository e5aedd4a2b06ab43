#pragma once
// Portable random draws. std::mt19937_64 is bit-specified by the standard
// but the <random> distributions are not, so draws are built directly on
// the engine output to keep seeded runs identical across toolchains.

#include <cmath>
#include <cstdint>
#include <random>

namespace cogmap {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Child stream for (root seed, index); used for restarts and per-map generation.
    static Rng derive(std::uint64_t root, std::uint64_t index) {
        return Rng(splitmix(root ^ splitmix(index + 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform integer in [lo, hi].
    int between(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential() { return -std::log1p(-uniform()); }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace cogmap
