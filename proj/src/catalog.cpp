#include "fixpt/catalog.hpp"

#include <cmath>
#include <set>

#include "fixpt/errors.hpp"
#include "fixpt/format.hpp"

namespace fixpt {

namespace {

void require_unit_interval_open(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw ParameterError("q must lie in (0, 1), got " + format_double(q));
    }
}

/// Conjugate-exponent norm of (a, b).
double dual_norm2(double a, double b, double p) {
    if (p == 1.0) return std::max(std::abs(a), std::abs(b));
    if (p == NormedSpace::kInfinity) return std::abs(a) + std::abs(b);
    const double q = p / (p - 1.0);
    return std::pow(std::pow(std::abs(a), q) + std::pow(std::abs(b), q), 1.0 / q);
}

Vector scaled(const Vector& x, double s) { return s * x; }

}  // namespace

Mapping make_example21(double q) {
    require_unit_interval_open(q);
    const NormedSpace space(1, 2.0);
    // Points within the membership tolerance above 1 are treated as 1.
    auto apply = [q](const Vector& x) { return x[0] >= 1.0 ? Vector{0.0} : Vector{q * x[0]}; };
    auto power = [q](std::size_t n, const Vector& x) {
        if (n == 0) return x;
        if (x[0] >= 1.0) return Vector{0.0};
        return Vector{std::pow(q, static_cast<double>(n)) * x[0]};
    };
    MappingMeta meta;
    meta.declared_class = MappingClass::nearly_nonexpansive;
    meta.a_schedule = Schedule::geometric(q);
    meta.known_fixed_points = std::vector<Vector>{Vector{0.0}};
    meta.discontinuities = {Vector{1.0}};
    return Mapping("example21", space, Domain::cube(1, 0.0, 1.0), apply, power, std::move(meta));
}

Mapping make_linear_contraction(double q, std::size_t dim, double p) {
    require_unit_interval_open(q);
    if (dim == 0) throw ParameterError("dim must be >= 1");
    const NormedSpace space(dim, p);
    auto apply = [q](const Vector& x) { return scaled(x, q); };
    auto power = [q](std::size_t n, const Vector& x) {
        return scaled(x, std::pow(q, static_cast<double>(n)));
    };
    MappingMeta meta;
    meta.declared_class = MappingClass::nonexpansive;
    meta.lipschitz_L = 1.0;
    meta.k_schedule = Schedule::constant(1.0);
    meta.known_fixed_points = std::vector<Vector>{Vector::zeros(dim)};
    return Mapping("contraction", space, Domain::ball(Vector::zeros(dim), 1.0), apply, power,
                   std::move(meta));
}

Mapping make_identity(std::size_t dim, double p) {
    if (dim == 0) throw ParameterError("dim must be >= 1");
    const NormedSpace space(dim, p);
    MappingMeta meta;
    meta.declared_class = MappingClass::nonexpansive;
    meta.lipschitz_L = 1.0;
    meta.k_schedule = Schedule::constant(1.0);
    meta.fixed_set_is_domain = true;
    return Mapping(
        "identity", space, Domain::cube(dim, 0.0, 1.0), [](const Vector& x) { return x; },
        [](std::size_t, const Vector& x) { return x; }, std::move(meta));
}

Mapping make_asymptotically_nonexpansive_example(std::size_t dim, double p) {
    if (dim == 0) throw ParameterError("dim must be >= 1");
    const NormedSpace space(dim, p);
    MappingMeta meta;
    meta.declared_class = MappingClass::asymptotically_nonexpansive;
    meta.known_fixed_points = std::vector<Vector>{Vector::zeros(dim)};

    if (dim == 1) {
        meta.k_schedule = Schedule::constant(1.0);
        meta.lipschitz_L = 1.0;
        return Mapping(
            "asymptotic_demo", space, Domain::cube(1, 0.0, 1.0),
            [](const Vector& x) { return scaled(x, 0.5); },
            [](std::size_t n, const Vector& x) {
                return scaled(x, std::ldexp(1.0, -static_cast<int>(n)));
            },
            std::move(meta));
    }

    std::vector<double> k_values;
    for (int n = 1;; ++n) {
        const double c = dual_norm2(std::ldexp(1.0, 2 - n), std::ldexp(1.0, -n), p);
        if (c <= 1.0) break;
        k_values.push_back(c);
    }
    meta.lipschitz_L = k_values.empty() ? 1.0 : k_values.front();
    meta.k_schedule = Schedule::table(std::move(k_values), 1.0);

    std::vector<double> lo(dim, 0.0);
    std::vector<double> hi(dim, 1.0);
    hi[1] = 4.0;
    auto power = [](std::size_t n, const Vector& x) {
        if (n == 0) return x;
        const int ni = static_cast<int>(n);
        std::vector<double> c(x.dim(), 0.0);
        c[1] = std::ldexp(x[0], 2 - ni) + std::ldexp(x[1], -ni);
        for (std::size_t i = 2; i < c.size(); ++i) c[i] = std::ldexp(x[i], -ni);
        return Vector(std::move(c));
    };
    auto apply = [power](const Vector& x) { return power(1, x); };
    return Mapping("asymptotic_demo", space, Domain::box(std::move(lo), std::move(hi)), apply,
                   power, std::move(meta));
}

Mapping make_cosine() {
    MappingMeta meta;
    meta.declared_class = MappingClass::nonexpansive;
    meta.lipschitz_L = 1.0;
    return Mapping(
        "cosine", NormedSpace(1, 2.0), Domain::cube(1, 0.0, 1.0),
        [](const Vector& x) { return Vector{std::cos(x[0])}; }, std::nullopt, std::move(meta));
}

const std::vector<std::string>& catalog_ids() {
    static const std::vector<std::string> ids = {"example21", "contraction", "identity",
                                                 "asymptotic_demo", "cosine"};
    return ids;
}

Mapping make_catalog_mapping(std::string_view id, const CatalogParams& params,
                             const NormedSpace& space) {
    auto allow = [&](std::initializer_list<std::string_view> names) {
        const std::set<std::string_view> allowed(names);
        for (const auto& [k, v] : params) {
            if (!allowed.contains(k)) {
                throw ParameterError("mapping '" + std::string(id) + "' has no parameter '" + k +
                                     "'");
            }
        }
    };
    auto get = [&](const std::string& name) -> double {
        const auto it = params.find(name);
        if (it == params.end()) {
            throw ParameterError("mapping '" + std::string(id) + "' requires parameter '" + name +
                                 "'");
        }
        return it->second;
    };
    auto require_dim = [&](std::size_t dim) {
        if (space.dim() != dim) {
            throw ParameterError("mapping '" + std::string(id) + "' lives in dimension " +
                                 std::to_string(dim) + ", space has " +
                                 std::to_string(space.dim()));
        }
    };

    if (id == "example21") {
        allow({"q"});
        require_dim(1);
        return make_example21(get("q"));
    }
    if (id == "contraction") {
        allow({"q"});
        return make_linear_contraction(get("q"), space.dim(), space.p());
    }
    if (id == "identity") {
        allow({});
        return make_identity(space.dim(), space.p());
    }
    if (id == "asymptotic_demo") {
        allow({});
        return make_asymptotically_nonexpansive_example(space.dim(), space.p());
    }
    if (id == "cosine") {
        allow({});
        require_dim(1);
        return make_cosine();
    }
    throw ParameterError("unknown mapping id '" + std::string(id) + "'");
}

}  // namespace fixpt
