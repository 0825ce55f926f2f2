#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace critsamp {

/// SplitMix64 generator. Used instead of <random> engines wherever the
/// output stream must be identical across standard libraries (corpus
/// synthesis, train/test shuffling).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive. The modulo bias
    /// of n/2^64 is irrelevant at the bounds used here.
    std::uint64_t bounded(std::uint64_t n) { return next() % n; }

    /// Standard normal via Box-Muller. Consumes two uniforms per call.
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace critsamp
