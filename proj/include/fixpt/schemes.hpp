#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixpt/mapping.hpp"
#include "fixpt/schedule.hpp"
#include "fixpt/space.hpp"

namespace fixpt {

/// The iteration processes. Step n (n >= 1) maps x_n to x_{n+1}:
///
///   picard              x_{n+1} = T x_n
///   mann                x_{n+1} = (1 - a_n) x_n + a_n T x_n
///   ishikawa            y_n = (1 - b_n) x_n + b_n T x_n,   x_{n+1} = (1 - a_n) x_n + a_n T y_n
///   modified_mann       x_{n+1} = (1 - a_n) x_n + a_n T^n x_n
///   pm_hybrid           y_n = (1 - a_n) x_n + a_n T x_n,   x_{n+1} = T y_n
///   modified_pm_hybrid  y_n = (1 - a_n) x_n + a_n T^n x_n, x_{n+1} = T^n y_n
enum class Scheme { picard, mann, ishikawa, modified_mann, pm_hybrid, modified_pm_hybrid };

std::string_view to_string(Scheme s);
/// Throws ParameterError for unknown names.
Scheme scheme_from_string(std::string_view name);
const std::vector<Scheme>& all_schemes();

inline constexpr double kDefaultStopTolerance = 1e-12;
inline constexpr std::size_t kDefaultMaxSteps = 10000;

struct RunConfig {
    Scheme scheme = Scheme::picard;
    Mapping mapping;
    Schedule alpha = Schedule::constant(0.5);
    /// Required exactly for ishikawa.
    std::optional<Schedule> beta;
    Vector x0;
    std::size_t max_steps = kDefaultMaxSteps;
    /// Stop once ||x_{n+1} - x_n|| <= stop_tolerance. Values <= 0 disable the
    /// tolerance stop and run all max_steps.
    double stop_tolerance = kDefaultStopTolerance;
};

enum class StopReason { tolerance, max_steps, domain_exit };

std::string_view to_string(StopReason r);

/// Diagnostics of one iterate x_k (k = number of steps taken so far).
struct StepRecord {
    /// ||x_k - x_{k-1}||, zero for the starting point.
    double step_norm = 0.0;
    double residual_T = 0.0;
    /// ||x_k - T^(k+1) x_k||: the power used by the step leaving x_k.
    double residual_Tn = 0.0;
    /// min over known fixed points; absent when F(T) is unknown.
    std::optional<double> dist_to_known_fp;
    /// Mapping applications spent by the scheme to reach x_k.
    std::size_t applications = 0;
};

struct Trajectory {
    Scheme scheme = Scheme::picard;
    Schedule alpha = Schedule::constant(0.5);
    std::optional<Schedule> beta;
    std::vector<Vector> iterates;
    std::vector<StepRecord> records;
    StopReason stop_reason = StopReason::max_steps;

    /// Number of steps taken (iterates.size() - 1).
    std::size_t steps() const noexcept { return iterates.empty() ? 0 : iterates.size() - 1; }
};

enum class Tri { satisfied, violated, undetermined };

std::string_view to_string(Tri t);

struct ScheduleVerdict {
    Tri range = Tri::satisfied;
    /// Divergence of sum alpha_n (mann only; satisfied otherwise).
    Tri divergence = Tri::satisfied;
    /// Smallest and largest alpha over the horizon, folded with the limit.
    double alpha_lower = 0.0;
    double alpha_upper = 0.0;
    std::vector<std::string> diagnostics;

    /// No constraint is violated.
    bool ok() const noexcept { return range != Tri::violated && divergence != Tri::violated; }
};

/// Checks the step-size constraints of `scheme` for n <= horizon.
///
/// Range constraints are exact over the horizon. Divergence of sum alpha_n is
/// decided from the schedule parameters where possible, else heuristically by
/// comparing the partial-sum mass of the last two doublings of the horizon
/// (equal masses indicate logarithmic growth).
ScheduleVerdict validate_schedule(Scheme scheme, const Schedule& alpha,
                                  const std::optional<Schedule>& beta, std::size_t horizon);

/// Runs the scheme. Throws ConfigError when the schedule is invalid for the
/// scheme, x0 lies outside the domain, or beta presence does not match.
Trajectory run_scheme(const RunConfig& config);

/// Exact multiplier m_n with x_{n+1} = m_n x_n for Tx = qx and constant alpha.
/// Supports picard, mann, pm_hybrid and modified_pm_hybrid.
double linear_rate_oracle(Scheme scheme, double q, double alpha, std::size_t n);

}  // namespace fixpt
