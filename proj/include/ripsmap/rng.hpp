#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace ripsmap {

// splitmix64 step; used to stretch user seeds and derive child streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seedable generator with bit-identical output on every platform. The engine
// is mt19937_64, whose output sequence is pinned by the standard; draws use
// explicit mappings instead of std::uniform_*_distribution, whose results
// differ between standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t s = seed;
        engine_.seed(splitmix64(s));
    }

    // Independent stream derived from (seed, tag); gives each part of a
    // composite dataset its own reproducible stream.
    Rng split(std::uint64_t tag) const {
        std::uint64_t s = seed_ ^ (0xbf58476d1ce4e5b9ULL * (tag + 1));
        std::uint64_t a = splitmix64(s);
        std::uint64_t b = splitmix64(s);
        return Rng(a ^ (b << 1) ^ (b >> 63));
    }

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace ripsmap
