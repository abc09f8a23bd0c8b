#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fixpt {

/// Point of R^d. Every coordinate is finite and the dimension is at least one.
class Vector {
public:
    Vector(std::initializer_list<double> coords);
    explicit Vector(std::vector<double> coords);

    /// Origin of R^dim.
    static Vector zeros(std::size_t dim);
    /// dim-dimensional vector with coordinate i set to value, zero elsewhere.
    static Vector basis(std::size_t dim, std::size_t i, double value = 1.0);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    friend Vector operator+(const Vector& a, const Vector& b);
    friend Vector operator-(const Vector& a, const Vector& b);
    friend Vector operator-(const Vector& a);
    friend Vector operator*(double s, const Vector& v);
    friend Vector operator*(const Vector& v, double s) { return s * v; }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> coords_;
};

/// (1 - t) * x + t * y, evaluated coordinate-wise.
Vector convex_combination(const Vector& x, const Vector& y, double t);

/// Finite-dimensional l_p space. p may be +infinity.
class NormedSpace {
public:
    static constexpr double kInfinity = std::numeric_limits<double>::infinity();

    NormedSpace(std::size_t dim, double p);

    std::size_t dim() const noexcept { return dim_; }
    double p() const noexcept { return p_; }
    bool is_infinity_norm() const noexcept { return p_ == kInfinity; }
    /// l_p is uniformly convex exactly for 1 < p < infinity.
    bool uniformly_convex() const noexcept { return p_ > 1.0 && p_ < kInfinity; }

    double norm(const Vector& v) const;
    double distance(const Vector& a, const Vector& b) const;

    friend bool operator==(const NormedSpace&, const NormedSpace&) = default;

private:
    std::size_t dim_;
    double p_;
};

/// Absolute slack of the membership test.
inline constexpr double kDomainTolerance = 1e-9;

/// Closed convex set: either a coordinate box or a norm ball.
class Domain {
public:
    enum class Kind { box, ball };

    static Domain box(std::vector<double> lo, std::vector<double> hi);
    /// [lo, hi]^dim
    static Domain cube(std::size_t dim, double lo, double hi);
    static Domain ball(Vector center, double radius);

    Kind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept;

    std::span<const double> lower() const noexcept { return lo_; }
    std::span<const double> upper() const noexcept { return hi_; }
    const Vector& center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }

    /// Membership within kDomainTolerance, measured in `space` for balls.
    bool contains(const NormedSpace& space, const Vector& v) const;
    /// box: norm of the side-length vector; ball: 2 * radius.
    double diameter(const NormedSpace& space) const;

private:
    Domain(Kind kind, std::vector<double> lo, std::vector<double> hi, Vector center, double radius);

    Kind kind_;
    std::vector<double> lo_;
    std::vector<double> hi_;
    Vector center_;
    double radius_;
};

/// Sampled upper bound on the modulus of convexity at one epsilon.
struct ModulusEstimate {
    double epsilon = 0.0;
    double estimate = 1.0;
    std::size_t sample_count = 0;
    /// Number of pairs in the pool that met the ||x - y|| >= epsilon constraint.
    std::size_t admissible_count = 0;
    std::pair<Vector, Vector> best_witness{Vector{0.0}, Vector{0.0}};
};

double norm(const NormedSpace& space, const Vector& v);

/// Minimum of 1 - ||x + y|| / 2 over a seeded pool of unit-ball pairs with
/// ||x - y|| >= epsilon. The pool depends only on (space, sample_count, seed),
/// so a larger epsilon filters a subset of the same pool.
///
/// Throws InfeasibleConstraint when epsilon > 2.
ModulusEstimate modulus_of_convexity_estimate(const NormedSpace& space, double epsilon,
                                              std::size_t sample_count, std::uint64_t seed);

bool domain_membership(const Domain& domain, const NormedSpace& space, const Vector& v);

}  // namespace fixpt
