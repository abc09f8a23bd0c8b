#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixpt/schedule.hpp"
#include "fixpt/space.hpp"

namespace fixpt {

enum class MappingClass {
    nonexpansive,
    asymptotically_nonexpansive,
    nearly_nonexpansive,
    uniformly_lipschitz_only,
    unknown,
};

std::string_view to_string(MappingClass c);
/// Throws ParameterError for unknown names.
MappingClass mapping_class_from_string(std::string_view name);

struct MappingMeta {
    MappingClass declared_class = MappingClass::unknown;
    /// Finite part of F(T) known in closed form.
    std::optional<std::vector<Vector>> known_fixed_points;
    /// F(T) is the whole domain (identity-like maps); d(x, F(T)) = 0 on C.
    bool fixed_set_is_domain = false;
    std::optional<double> lipschitz_L;
    std::optional<Schedule> k_schedule;
    std::optional<Schedule> a_schedule;
    /// Points where T jumps; certifiers sample next to them.
    std::vector<Vector> discontinuities;
};

/// Self-map T : C -> C of a convex domain in an l_p space.
///
/// Construction samples the domain and rejects maps that leave it, closed-form
/// powers that disagree with repeated application, and declared fixed points
/// that are not fixed. Immutable afterwards.
class Mapping {
public:
    using Evaluator = std::function<Vector(const Vector&)>;
    using PowerEvaluator = std::function<Vector(std::size_t, const Vector&)>;

    Mapping(std::string name, NormedSpace space, Domain domain, Evaluator apply,
            std::optional<PowerEvaluator> power, MappingMeta meta);

    const std::string& name() const noexcept { return name_; }
    const NormedSpace& space() const noexcept { return space_; }
    const Domain& domain() const noexcept { return domain_; }
    const MappingMeta& meta() const noexcept { return meta_; }
    bool has_closed_form_power() const noexcept { return power_.has_value(); }

    /// T x. Throws DomainViolation when x is outside the domain.
    Vector apply(const Vector& x) const;
    /// T^n x, closed form when registered, else n-fold application.
    Vector apply_power(std::size_t n, const Vector& x) const;
    /// Mapping applications charged for one T^n evaluation.
    std::size_t power_cost(std::size_t n) const noexcept;

    bool contains(const Vector& x) const { return domain_.contains(space_, x); }
    /// d(x, F(T)) when F(T) is known, nullopt otherwise.
    std::optional<double> distance_to_fixed_set(const Vector& x) const;
    bool has_known_fixed_set() const noexcept;

private:
    void require_in_domain(const Vector& x) const;
    void validate() const;

    std::string name_;
    NormedSpace space_;
    Domain domain_;
    Evaluator apply_;
    std::optional<PowerEvaluator> power_;
    MappingMeta meta_;
};

/// Absolute slack on every sampled inequality.
inline constexpr double kCertTolerance = 1e-8;

enum class Verdict { certified, refuted, inconclusive };

std::string_view to_string(Verdict v);

struct Witness {
    Vector x{0.0};
    Vector y{0.0};
    std::size_t n = 0;
};

struct Certificate {
    std::string property_name;
    std::size_t n_min = 1;
    std::size_t n_max = 1;
    std::size_t sample_count = 0;
    double max_violation = 0.0;
    Witness witness;
    Verdict verdict = Verdict::inconclusive;
};

Vector apply_power(const Mapping& m, std::size_t n, const Vector& x);

/// ||T^n x - T^n y|| <= ||x - y|| + a_n for 1 <= n <= n_max.
Certificate certify_nearly_nonexpansive(const Mapping& m, const Schedule& a, std::size_t n_max,
                                        std::size_t sample_count, std::uint64_t seed);
/// ||T^n x - T^n y|| <= L ||x - y|| for 1 <= n <= n_max.
Certificate certify_uniform_lipschitz(const Mapping& m, double L, std::size_t n_max,
                                      std::size_t sample_count, std::uint64_t seed);
/// ||T^n x - T^n y|| <= k_n ||x - y|| for 1 <= n <= n_max.
Certificate certify_asymptotically_nonexpansive(const Mapping& m, const Schedule& k,
                                                std::size_t n_max, std::size_t sample_count,
                                                std::uint64_t seed);
/// ||T x - T y|| <= ||x - y||.
Certificate certify_nonexpansive(const Mapping& m, std::size_t sample_count, std::uint64_t seed);

/// a_n = (k_n - 1) * diam. Throws ScheduleViolation if some k_n < 1.
Schedule near_sequence_from_asymptotic(const Schedule& k, double diam);

/// Near-sequence implied by the metadata: a_schedule, else derived from
/// k_schedule over the domain diameter, else zero for nonexpansive maps.
std::optional<Schedule> effective_near_sequence(const Mapping& m);

/// ||x - T x||.
double fixed_point_residual(const Mapping& m, const Vector& x);

}  // namespace fixpt
