#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace randles {

/// Deterministic random source. Wraps mt19937_64 but derives doubles from the
/// raw bit stream directly, so sequences are bit-identical across platforms
/// and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// 10^u with u uniform in [lo_decades, hi_decades].
    double log_uniform(double lo_decades, double hi_decades) {
        return std::pow(10.0, uniform(lo_decades, hi_decades));
    }

    /// Standard normal via Box-Muller on the portable uniform stream.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    double normal(double sigma) { return sigma * normal(); }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace randles
