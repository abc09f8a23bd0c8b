#pragma once

#include <cstdint>
#include <random>

#include "fixpt/space.hpp"

namespace fixpt {

/// Seeded generator with a platform-independent uniform draw.
///
/// std::uniform_real_distribution is implementation-defined, so draws are
/// taken straight from the 53 high bits of mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
        return lo + engine_() % (hi - lo + 1);
    }

private:
    std::mt19937_64 engine_;
};

/// Point with norm exactly <= 1 on the unit sphere of `space`.
Vector sample_unit_sphere(const NormedSpace& space, Rng& rng);
/// Point in the closed unit ball of `space`.
Vector sample_unit_ball(const NormedSpace& space, Rng& rng);
/// Point in the domain (uniform for boxes).
Vector sample_domain(const Domain& domain, const NormedSpace& space, Rng& rng);

/// Rescales v/||v|| until its computed norm does not exceed one.
Vector normalize_into_unit_ball(const NormedSpace& space, const Vector& v);

}  // namespace fixpt
