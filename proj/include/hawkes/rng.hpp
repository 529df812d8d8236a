#pragma once

#include <cstdint>
#include <cmath>

namespace hawkes {

/// SplitMix64: seedable counter-based 64-bit generator (Steele, Lea & Flood's
/// mixing constants). The k-th output is a pure function of seed + k, so
/// streams are reproducible across platforms; all randomized components of
/// this library draw from it.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double strictly inside (0, 1).
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Exponential variate with the given rate (strictly positive output).
    double exponential(double rate) { return -std::log(next_double()) / rate; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

} // namespace hawkes
