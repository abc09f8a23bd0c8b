#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fixpt/mapping.hpp"
#include "fixpt/schemes.hpp"

namespace fixpt {

/// Tail oscillation bound for declaring a limit.
inline constexpr double kLimitTolerance = 1e-8;
/// Tail bound for ||x_n - T^n x_n|| and ||x_n - T x_n||.
inline constexpr double kRegularityTolerance = 1e-8;
/// Conclusion bound of the uniform convexity lemma checker.
inline constexpr double kLemma22Tolerance = 1e-6;
/// ||p* - T p*|| bound for an accepted limit point.
inline constexpr double kFixedPointTolerance = 1e-8;
/// Slack of the per-step Fejer inequality and its telescoped form.
inline constexpr double kFejerTolerance = 1e-9;
inline constexpr std::size_t kMinTailWindow = 50;

/// Final 25% of `length` entries, at least min(50, length).
std::size_t tail_window(std::size_t length);

struct LimitVerdict {
    enum class Kind { converged, diverged, undetermined };

    Kind kind = Kind::undetermined;
    double last_value = 0.0;
    /// max - min over the tail window.
    double tail_oscillation = 0.0;
    std::size_t window = 0;
    std::optional<double> estimated_limit;
};

std::string_view to_string(LimitVerdict::Kind k);

/// Converged when the tail window oscillates by at most `tolerance`; diverged
/// when the tail oscillates at least as much as the window before it.
LimitVerdict assess_limit(std::span<const double> seq, double tolerance = kLimitTolerance);

struct Lemma21Report {
    bool recurrence_holds = true;
    /// First n (1-based) with a_{n+1} > (1 + delta_n) a_n + b_n.
    std::optional<std::size_t> first_violation;
    std::size_t violation_count = 0;
    /// Partial sums are flat (tail mass <= kLimitTolerance) over the window.
    bool delta_summable = true;
    bool b_summable = true;
    bool hypotheses_hold = true;
    bool zero_subsequence = false;
    LimitVerdict limit;
};

/// Element i of each sequence holds index n = i + 1. Uses the first N entries.
/// Throws ContractViolation for negative entries or short sequences.
Lemma21Report check_lemma21(std::span<const double> a, std::span<const double> b,
                            std::span<const double> delta, std::size_t N);

enum class LemmaOutcome { conclusion_holds, conclusion_fails, hypothesis_failure };

std::string_view to_string(LemmaOutcome o);

struct Lemma22Tolerances {
    /// Slack on limsup ||x_n|| <= r, limsup ||y_n|| <= r and ||mix_n|| -> r.
    double hypothesis = kLimitTolerance;
    /// Bound on the tail of ||x_n - y_n||.
    double conclusion = kLemma22Tolerance;
};

struct Lemma22Report {
    bool space_uniformly_convex = true;
    double limsup_x = 0.0;
    double limsup_y = 0.0;
    /// Tail max of | ||(1 - t_n) x_n + t_n y_n|| - r |.
    double mix_deviation = 0.0;
    /// Tail max of ||x_n - y_n||.
    double tail_max_gap = 0.0;
    bool hypotheses_hold = true;
    LemmaOutcome outcome = LemmaOutcome::hypothesis_failure;
    std::vector<std::string> diagnostics;
};

/// Throws ContractViolation unless 0 < a <= t_n <= b < 1 for n < N (message
/// carries the offending index) and all sequences have N entries.
Lemma22Report check_lemma22_witness(std::span<const double> t, double a, double b,
                                    std::span<const Vector> x, std::span<const Vector> y,
                                    double r, const NormedSpace& space, std::size_t N,
                                    Lemma22Tolerances tol = {});

struct Theorem31Report {
    /// (i) one verdict on ||x_n - p|| per known fixed point.
    std::vector<LimitVerdict> distance_limits;
    bool part_i = false;
    /// (ii)
    double residual_Tn_tail_max = 0.0;
    bool part_ii = false;
    /// (iii)
    double residual_T_tail_max = 0.0;
    double cauchy_tail = 0.0;
    Vector limit_point{0.0};
    double limit_residual = 0.0;
    bool part_iii = false;
    bool passed = false;
    std::vector<std::string> warnings;
};

/// Throws ScopeError unless the trajectory came from modified_pm_hybrid, and
/// ContractViolation when the mapping has no finite known fixed set.
Theorem31Report verify_theorem31(const Trajectory& traj, const Mapping& m);

struct Theorem32Report {
    enum class Outcome { consistent, inconsistent, no_evidence };

    std::vector<double> distances;
    /// Window minimum of d(x_n, F).
    double liminf_estimate = 0.0;
    /// Window maximum of d(x_n, F).
    double tail_max = 0.0;
    Outcome outcome = Outcome::no_evidence;
    bool passed = false;
};

std::string_view to_string(Theorem32Report::Outcome o);

/// Throws ContractViolation for an empty fixed set.
Theorem32Report verify_theorem32(const Trajectory& traj, std::span<const Vector> fixed_set,
                                 const NormedSpace& space);
Theorem32Report verify_theorem32(const Trajectory& traj, const Mapping& m);

struct FejerReport {
    /// max over steps and fixed points of ||x_{n+1} - p|| - ||x_n - p|| - b_n.
    double max_step_excess = 0.0;
    std::optional<std::size_t> first_violation;
    /// max increase of ||x_n - p|| + sum_{i >= n} b_i (tail truncated at the run length).
    double telescoped_max_increase = 0.0;
    bool step_bound_holds = true;
    bool telescoped_holds = true;
    bool passed = true;
};

/// Checks ||x_{n+1} - p|| <= ||x_n - p|| + (1 + alpha_n) a_n with a_n from
/// effective_near_sequence. Throws ContractViolation when a_n or a finite F(T)
/// is unavailable.
FejerReport verify_fejer_bound(const Trajectory& traj, const Mapping& m);

/// Nondecreasing phi with phi(0) = 0 and phi(t) > 0 for t > 0.
class Phi {
public:
    enum class Kind { linear, power, table };

    static Phi linear(double lambda);
    static Phi power(double lambda, double gamma);
    /// Piecewise linear through (t_i, v_i), held constant past the last knot.
    /// The grid must start at t = 0 with value 0.
    static Phi table(std::vector<double> t, std::vector<double> values);

    double operator()(double t) const;

    Kind kind() const noexcept { return kind_; }
    double lambda() const noexcept { return lambda_; }
    double gamma() const noexcept { return gamma_; }
    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }

    friend bool operator==(const Phi&, const Phi&) = default;

private:
    Phi(Kind kind, double lambda, double gamma, std::vector<double> grid, std::vector<double> values);

    Kind kind_;
    double lambda_;
    double gamma_;
    std::vector<double> grid_;
    std::vector<double> values_;
};

struct ConditionIWitness {
    Phi phi;
    std::optional<Certificate> certificate;
};

/// Samples x in C and checks ||x - T x|| >= phi(d(x, F(T))) - kCertTolerance.
/// Throws ContractViolation when F(T) is unknown.
Certificate certify_condition_I(const Mapping& m, const Phi& phi, std::size_t sample_count,
                                std::uint64_t seed);
/// Certifies and stores the certificate in the returned witness.
ConditionIWitness make_condition_I_witness(const Mapping& m, const Phi& phi,
                                           std::size_t sample_count, std::uint64_t seed);

struct Theorem33Report {
    double residual_T_tail_max = 0.0;
    bool residual_to_zero = false;
    /// max over steps of phi(d(x_n, F)) - ||x_n - T x_n||.
    double max_chain_excess = 0.0;
    bool condition_I_chain = false;
    double distance_tail_max = 0.0;
    bool distance_to_zero = false;
    bool passed = false;
};

/// Throws ScopeError unless w carries a certified certificate.
Theorem33Report verify_theorem33(const Trajectory& traj, const Mapping& m,
                                 const ConditionIWitness& w);

struct RateRow {
    Scheme scheme = Scheme::picard;
    std::optional<std::size_t> steps_to_target;
    std::optional<std::size_t> applications_to_target;
    std::size_t steps = 0;
    std::size_t total_applications = 0;
    double final_error = 0.0;
    StopReason stop_reason = StopReason::max_steps;
};

struct RateReport {
    double target_error = 0.0;
    std::vector<RateRow> rows;
};

/// Runs every scheme from base.x0 (in parallel) and reports rows in input
/// order. beta is kept only for ishikawa. Throws ConfigError when the mapping
/// has no known fixed set or a scheme rejects the schedules.
RateReport compare_schemes(const RunConfig& base, std::span<const Scheme> schemes,
                           double target_error);

}  // namespace fixpt
