#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "smalelab/polynomial.hpp"

namespace smalelab {

/// Tiny deterministic generator (splitmix64). Results are identical across
/// platforms and independent of thread scheduling when each work item derives
/// its own stream from (seed, index).
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform in the closed disk of the given radius (rejection from the square).
    Cplx uniform_disk(double radius) {
        for (;;) {
            double x = uniform(-1.0, 1.0);
            double y = uniform(-1.0, 1.0);
            if (x * x + y * y <= 1.0)
                return Cplx(radius * x, radius * y);
        }
    }

    /// Uniform point on the unit circle.
    Cplx unit_circle() {
        double th = uniform(0.0, 2.0 * std::numbers::pi);
        return Cplx(std::cos(th), std::sin(th));
    }

private:
    uint64_t state_;
};

/// Independent stream for work item `index` of a run seeded with `seed`.
inline SplitMix64 derive_stream(uint64_t seed, uint64_t index) {
    SplitMix64 mixer(seed ^ (0xA0761D6478BD642FULL * (index + 1)));
    mixer.next();
    return mixer;
}

}  // namespace smalelab
