#ifndef GHLAB_RNG_HPP
#define GHLAB_RNG_HPP

#include <cmath>
#include <cstdint>

#include "ghlab/linalg.hpp"

namespace ghlab {

/// Counter-based splitmix64. Each (seed, counter) pair opens an independent
/// substream, so Monte Carlo loops can be partitioned across workers with
/// results independent of the worker count: sample i always draws from
/// substream(seed, i).
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t counter)
        : state_(seed + counter * 0x9E3779B97F4A7C15ULL) {
        // burn one step so nearby counters decorrelate
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on the unit sphere.
    Vec3 next_sphere() {
        const double z = 1.0 - 2.0 * next_double();
        const double phi = 2.0 * 3.14159265358979323846 * next_double();
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {rho * std::cos(phi), rho * std::sin(phi), z};
    }

    /// Uniform in the ball of given radius (inverse-cdf radial sampling,
    /// no rejection, so the draw count per sample is fixed).
    Vec3 next_ball(double radius) {
        const double r = radius * std::cbrt(next_double());
        return next_sphere() * r;
    }

private:
    std::uint64_t state_;
};

} // namespace ghlab

#endif
