#include "fixpt/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fixpt/errors.hpp"
#include "fixpt/random.hpp"

namespace fixpt {

namespace {

void require_finite(const std::vector<double>& coords) {
    if (coords.empty()) {
        throw ContractViolation("vector must have dimension >= 1");
    }
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!std::isfinite(coords[i])) {
            throw ContractViolation("vector coordinate " + std::to_string(i) + " is not finite");
        }
    }
}

void require_same_dim(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) {
        throw ContractViolation("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
    }
}

}  // namespace

Vector::Vector(std::initializer_list<double> coords) : coords_(coords) { require_finite(coords_); }

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) { require_finite(coords_); }

Vector Vector::zeros(std::size_t dim) { return Vector(std::vector<double>(dim, 0.0)); }

Vector Vector::basis(std::size_t dim, std::size_t i, double value) {
    std::vector<double> c(dim, 0.0);
    if (i >= dim) {
        throw ContractViolation("basis index out of range");
    }
    c[i] = value;
    return Vector(std::move(c));
}

Vector operator+(const Vector& a, const Vector& b) {
    require_same_dim(a, b);
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] + b.coords_[i];
    return Vector(std::move(c));
}

Vector operator-(const Vector& a, const Vector& b) {
    require_same_dim(a, b);
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] - b.coords_[i];
    return Vector(std::move(c));
}

Vector operator-(const Vector& a) { return -1.0 * a; }

Vector operator*(double s, const Vector& v) {
    std::vector<double> c(v.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * v.coords_[i];
    return Vector(std::move(c));
}

Vector convex_combination(const Vector& x, const Vector& y, double t) {
    require_same_dim(x, y);
    std::vector<double> c(x.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (1.0 - t) * x[i] + t * y[i];
    return Vector(std::move(c));
}

NormedSpace::NormedSpace(std::size_t dim, double p) : dim_(dim), p_(p) {
    if (dim == 0) {
        throw ContractViolation("space dimension must be >= 1");
    }
    if (!(p >= 1.0)) {
        throw ContractViolation("norm exponent p must be >= 1");
    }
}

double NormedSpace::norm(const Vector& v) const {
    if (v.dim() != dim_) {
        throw ContractViolation("dimension mismatch: vector has " + std::to_string(v.dim()) +
                                " coordinates, space has " + std::to_string(dim_));
    }
    const auto c = v.coords();
    if (p_ == kInfinity) {
        double m = 0.0;
        for (double x : c) m = std::max(m, std::abs(x));
        return m;
    }
    if (p_ == 1.0) {
        double s = 0.0;
        for (double x : c) s += std::abs(x);
        return s;
    }
    // Scale by the largest magnitude so |x|^p neither overflows nor underflows.
    double scale = 0.0;
    for (double x : c) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    if (c.size() == 1) return scale;
    double s = 0.0;
    if (p_ == 2.0) {
        for (double x : c) {
            const double r = x / scale;
            s += r * r;
        }
        return scale * std::sqrt(s);
    }
    for (double x : c) s += std::pow(std::abs(x) / scale, p_);
    return scale * std::pow(s, 1.0 / p_);
}

double NormedSpace::distance(const Vector& a, const Vector& b) const { return norm(a - b); }

Domain::Domain(Kind kind, std::vector<double> lo, std::vector<double> hi, Vector center,
               double radius)
    : kind_(kind), lo_(std::move(lo)), hi_(std::move(hi)), center_(std::move(center)),
      radius_(radius) {}

Domain Domain::box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.empty() || lo.size() != hi.size()) {
        throw ContractViolation("box bounds must be nonempty and of equal length");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || lo[i] > hi[i]) {
            throw ContractViolation("box interval " + std::to_string(i) + " is empty or unbounded");
        }
    }
    Vector center = Vector::zeros(lo.size());
    return Domain(Kind::box, std::move(lo), std::move(hi), std::move(center), 0.0);
}

Domain Domain::cube(std::size_t dim, double lo, double hi) {
    return box(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

Domain Domain::ball(Vector center, double radius) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw ContractViolation("ball radius must be finite and >= 0");
    }
    return Domain(Kind::ball, {}, {}, std::move(center), radius);
}

std::size_t Domain::dim() const noexcept { return kind_ == Kind::box ? lo_.size() : center_.dim(); }

bool Domain::contains(const NormedSpace& space, const Vector& v) const {
    if (v.dim() != dim()) {
        throw ContractViolation("dimension mismatch in domain membership");
    }
    if (kind_ == Kind::box) {
        for (std::size_t i = 0; i < lo_.size(); ++i) {
            if (v[i] < lo_[i] - kDomainTolerance || v[i] > hi_[i] + kDomainTolerance) return false;
        }
        return true;
    }
    return space.distance(v, center_) <= radius_ + kDomainTolerance;
}

double Domain::diameter(const NormedSpace& space) const {
    if (kind_ == Kind::ball) return 2.0 * radius_;
    std::vector<double> sides(lo_.size());
    for (std::size_t i = 0; i < sides.size(); ++i) sides[i] = hi_[i] - lo_[i];
    return space.norm(Vector(std::move(sides)));
}

double norm(const NormedSpace& space, const Vector& v) { return space.norm(v); }

bool domain_membership(const Domain& domain, const NormedSpace& space, const Vector& v) {
    return domain.contains(space, v);
}

ModulusEstimate modulus_of_convexity_estimate(const NormedSpace& space, double epsilon,
                                              std::size_t sample_count, std::uint64_t seed) {
    if (!(epsilon >= 0.0)) {
        throw ContractViolation("epsilon must be >= 0");
    }
    if (epsilon > 2.0) {
        throw InfeasibleConstraint("no pair in the unit ball has ||x - y|| > 2");
    }
    if (sample_count == 0) {
        throw ContractViolation("sample_count must be >= 1");
    }

    const std::size_t d = space.dim();
    ModulusEstimate result;
    result.epsilon = epsilon;
    result.sample_count = sample_count;
    result.estimate = 1.0;
    bool found = false;

    auto consider = [&](const Vector& x, const Vector& y) {
        if (space.norm(x) > 1.0 || space.norm(y) > 1.0) return;
        if (space.distance(x, y) < epsilon) return;
        ++result.admissible_count;
        const double gap = std::clamp(1.0 - space.norm(x + y) / 2.0, 0.0, 1.0);
        if (!found || gap < result.estimate) {
            result.estimate = gap;
            result.best_witness = {x, y};
            found = true;
        }
    };

    // Deterministic extremes: coincident pairs (epsilon = 0) and antipodal
    // pairs on the sphere (epsilon = 2).
    const Vector e0 = Vector::basis(d, 0);
    consider(e0, e0);
    for (std::size_t i = 0; i < d; ++i) {
        const Vector e = Vector::basis(d, i);
        consider(e, -e);
    }
    const Vector diagonal = normalize_into_unit_ball(space, Vector(std::vector<double>(d, 1.0)));
    consider(diagonal, -diagonal);

    // Random pool; the draw sequence never depends on epsilon.
    Rng rng(seed);
    for (std::size_t s = 0; s < sample_count; ++s) {
        switch (s % 4) {
            case 0:
            case 1: {
                Vector x = sample_unit_sphere(space, rng);
                Vector y = sample_unit_sphere(space, rng);
                consider(x, y);
                break;
            }
            case 2: {
                Vector x = sample_unit_sphere(space, rng);
                Vector y = sample_unit_ball(space, rng);
                consider(x, y);
                break;
            }
            default: {
                Vector x = sample_unit_ball(space, rng);
                Vector y = sample_unit_ball(space, rng);
                consider(x, y);
                break;
            }
        }
    }
    if (!found) {
        // Unreachable for epsilon <= 2: the antipodal seed is always admissible.
        throw InfeasibleConstraint("no admissible pair found");
    }
    return result;
}

}  // namespace fixpt
