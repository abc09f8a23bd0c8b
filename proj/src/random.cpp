#include "fixpt/random.hpp"

#include <cmath>
#include <vector>

namespace fixpt {

Vector normalize_into_unit_ball(const NormedSpace& space, const Vector& v) {
    const double n = space.norm(v);
    Vector u = (1.0 / n) * v;
    // Rounding can leave ||u|| a few ulps above one.
    while (space.norm(u) > 1.0) u = (1.0 - 0x1.0p-52) * u;
    return u;
}

Vector sample_unit_sphere(const NormedSpace& space, Rng& rng) {
    const std::size_t d = space.dim();
    std::vector<double> c(d);
    for (;;) {
        double m = 0.0;
        for (auto& x : c) {
            x = rng.uniform(-1.0, 1.0);
            m = std::max(m, std::abs(x));
        }
        if (m > 1e-12) break;
    }
    return normalize_into_unit_ball(space, Vector(c));
}

Vector sample_unit_ball(const NormedSpace& space, Rng& rng) {
    const Vector dir = sample_unit_sphere(space, rng);
    const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(space.dim()));
    return radius * dir;
}

Vector sample_domain(const Domain& domain, const NormedSpace& space, Rng& rng) {
    if (domain.kind() == Domain::Kind::box) {
        const auto lo = domain.lower();
        const auto hi = domain.upper();
        std::vector<double> c(lo.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = rng.uniform(lo[i], hi[i]);
        return Vector(std::move(c));
    }
    return domain.center() + domain.radius() * sample_unit_ball(space, rng);
}

}  // namespace fixpt
