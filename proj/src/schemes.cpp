#include "fixpt/schemes.hpp"

#include <cmath>

#include "fixpt/errors.hpp"
#include "fixpt/format.hpp"

namespace fixpt {

namespace {

struct SchemeName {
    Scheme scheme;
    std::string_view name;
};

constexpr SchemeName kSchemeNames[] = {
    {Scheme::picard, "picard"},
    {Scheme::mann, "mann"},
    {Scheme::ishikawa, "ishikawa"},
    {Scheme::modified_mann, "modified_mann"},
    {Scheme::pm_hybrid, "pm_hybrid"},
    {Scheme::modified_pm_hybrid, "modified_pm_hybrid"},
};

enum class Bound { closed, open };

/// Flags the first n <= horizon with s_n outside the interval.
Tri check_range(const Schedule& s, const char* name, double lo, Bound lo_kind, double hi,
                Bound hi_kind, std::size_t horizon, std::vector<std::string>& diagnostics) {
    for (std::size_t n = 1; n <= horizon; ++n) {
        const double v = s.at(n);
        const bool below = lo_kind == Bound::closed ? v < lo : v <= lo;
        const bool above = hi_kind == Bound::closed ? v > hi : v >= hi;
        if (below || above) {
            diagnostics.push_back(std::string(name) + "_" + std::to_string(n) + " = " +
                                  format_double(v) + " outside " +
                                  (lo_kind == Bound::closed ? "[" : "(") + format_double(lo) +
                                  ", " + format_double(hi) +
                                  (hi_kind == Bound::closed ? "]" : ")"));
            return Tri::violated;
        }
    }
    return Tri::satisfied;
}

Tri check_divergence(const Schedule& alpha, std::size_t horizon,
                     std::vector<std::string>& diagnostics) {
    if (const auto lim = alpha.limit(); lim && *lim > 0.0) {
        return Tri::satisfied;
    }
    if (horizon < 4) {
        diagnostics.push_back("horizon too short to judge divergence of sum alpha_n");
        return Tri::undetermined;
    }
    auto partial = [&](std::size_t m) {
        double s = 0.0;
        for (std::size_t n = 1; n <= m; ++n) s += alpha.at(n);
        return s;
    };
    const double s_quarter = partial(horizon / 4);
    const double s_half = partial(horizon / 2);
    const double s_full = partial(horizon);
    const double early = s_half - s_quarter;
    const double late = s_full - s_half;
    if (late <= 1e-12 * std::max(1.0, s_full)) {
        diagnostics.push_back("partial sums of alpha_n have stalled at " + format_double(s_full));
        return Tri::violated;
    }
    const double ratio = early > 0.0 ? late / early : std::numeric_limits<double>::infinity();
    if (ratio >= 0.9 && late >= 1.0) {
        return Tri::satisfied;
    }
    diagnostics.push_back("sum alpha_n undetermined at horizon " + std::to_string(horizon) +
                          (ratio >= 0.9 ? " (leaning satisfied: at least logarithmic growth)"
                                        : " (leaning violated: sub-logarithmic growth)"));
    return Tri::undetermined;
}

}  // namespace

std::string_view to_string(Scheme s) {
    for (const auto& e : kSchemeNames) {
        if (e.scheme == s) return e.name;
    }
    return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
    for (const auto& e : kSchemeNames) {
        if (e.name == name) return e.scheme;
    }
    throw ParameterError("unknown scheme '" + std::string(name) + "'");
}

const std::vector<Scheme>& all_schemes() {
    static const std::vector<Scheme> v = {Scheme::picard,        Scheme::mann,
                                          Scheme::ishikawa,      Scheme::modified_mann,
                                          Scheme::pm_hybrid,     Scheme::modified_pm_hybrid};
    return v;
}

std::string_view to_string(StopReason r) {
    switch (r) {
        case StopReason::tolerance: return "tolerance";
        case StopReason::max_steps: return "max_steps";
        case StopReason::domain_exit: return "domain_exit";
    }
    return "max_steps";
}

std::string_view to_string(Tri t) {
    switch (t) {
        case Tri::satisfied: return "satisfied";
        case Tri::violated: return "violated";
        case Tri::undetermined: return "undetermined";
    }
    return "undetermined";
}

ScheduleVerdict validate_schedule(Scheme scheme, const Schedule& alpha,
                                  const std::optional<Schedule>& beta, std::size_t horizon) {
    if (horizon == 0) {
        throw ContractViolation("horizon must be >= 1");
    }
    ScheduleVerdict v;
    auto& diag = v.diagnostics;
    std::tie(v.alpha_lower, v.alpha_upper) = alpha.bounds(horizon);

    if (beta && scheme != Scheme::ishikawa) {
        diag.push_back("beta is only used by ishikawa");
        v.range = Tri::violated;
        return v;
    }

    switch (scheme) {
        case Scheme::picard:
            break;
        case Scheme::mann:
            v.range = check_range(alpha, "alpha", 0.0, Bound::closed, 1.0, Bound::open, horizon, diag);
            v.divergence = check_divergence(alpha, horizon, diag);
            break;
        case Scheme::ishikawa:
            if (!beta) {
                diag.push_back("ishikawa requires a beta schedule");
                v.range = Tri::violated;
                break;
            }
            v.range = check_range(alpha, "alpha", 0.0, Bound::closed, 1.0, Bound::closed, horizon, diag);
            if (v.range == Tri::satisfied) {
                v.range =
                    check_range(*beta, "beta", 0.0, Bound::closed, 1.0, Bound::closed, horizon, diag);
            }
            break;
        case Scheme::modified_mann:
            v.range = check_range(alpha, "alpha", 0.0, Bound::open, 1.0, Bound::open, horizon, diag);
            if (v.range == Tri::satisfied && !(v.alpha_lower > 0.0 && v.alpha_upper < 1.0)) {
                diag.push_back("modified_mann requires 0 < a <= alpha_n <= b < 1; alpha_n has "
                               "inf " + format_double(v.alpha_lower) + " and sup " +
                               format_double(v.alpha_upper));
                v.range = Tri::violated;
            }
            break;
        case Scheme::pm_hybrid:
            v.range = check_range(alpha, "alpha", 0.0, Bound::closed, 1.0, Bound::closed, horizon, diag);
            break;
        case Scheme::modified_pm_hybrid:
            v.range = check_range(alpha, "alpha", 0.0, Bound::open, 1.0, Bound::open, horizon, diag);
            if (v.range == Tri::satisfied && !(v.alpha_lower > 0.0 && v.alpha_upper < 1.0)) {
                diag.push_back("note: alpha_n is not bounded away from 0 and 1 (inf " +
                               format_double(v.alpha_lower) + ", sup " +
                               format_double(v.alpha_upper) + ")");
            }
            break;
    }
    return v;
}

Trajectory run_scheme(const RunConfig& config) {
    const Mapping& T = config.mapping;
    const auto verdict =
        validate_schedule(config.scheme, config.alpha, config.beta, std::max<std::size_t>(1, config.max_steps));
    if (!verdict.ok()) {
        std::string msg = "schedule invalid for " + std::string(to_string(config.scheme));
        for (const auto& d : verdict.diagnostics) msg += ": " + d;
        throw ConfigError(msg);
    }
    if (config.x0.dim() != T.space().dim() || !T.contains(config.x0)) {
        throw ConfigError("x0 lies outside the domain of mapping '" + T.name() + "'");
    }

    Trajectory traj;
    traj.scheme = config.scheme;
    traj.alpha = config.alpha;
    traj.beta = config.beta;

    const NormedSpace& space = T.space();
    Vector tx = config.x0;
    Vector tnx = config.x0;

    // Diagnostics for iterate k; caches T x_k and T^(k+1) x_k for the step.
    auto record = [&](std::size_t k, double step_norm, std::size_t applications) {
        const Vector& x = traj.iterates[k];
        tx = T.apply(x);
        tnx = k == 0 ? tx : T.apply_power(k + 1, x);
        StepRecord r;
        r.step_norm = step_norm;
        r.residual_T = space.distance(x, tx);
        r.residual_Tn = space.distance(x, tnx);
        r.dist_to_known_fp = T.distance_to_fixed_set(x);
        r.applications = applications;
        traj.records.push_back(r);
    };

    traj.iterates.push_back(config.x0);
    record(0, 0.0, 0);

    std::size_t applications = 0;
    for (std::size_t k = 0;; ++k) {
        if (k >= config.max_steps) {
            traj.stop_reason = StopReason::max_steps;
            break;
        }
        const std::size_t n = k + 1;
        const double a = config.alpha.at(n);
        const Vector& x = traj.iterates[k];
        std::optional<Vector> next;

        switch (config.scheme) {
            case Scheme::picard:
                next = tx;
                applications += 1;
                break;
            case Scheme::mann:
                next = convex_combination(x, tx, a);
                applications += 1;
                break;
            case Scheme::ishikawa: {
                const Vector y = convex_combination(x, tx, config.beta->at(n));
                applications += 1;
                if (T.contains(y)) {
                    next = convex_combination(x, T.apply(y), a);
                    applications += 1;
                }
                break;
            }
            case Scheme::modified_mann:
                next = convex_combination(x, tnx, a);
                applications += T.power_cost(n);
                break;
            case Scheme::pm_hybrid: {
                const Vector y = convex_combination(x, tx, a);
                applications += 1;
                if (T.contains(y)) {
                    next = T.apply(y);
                    applications += 1;
                }
                break;
            }
            case Scheme::modified_pm_hybrid: {
                const Vector y = convex_combination(x, tnx, a);
                applications += T.power_cost(n);
                if (T.contains(y)) {
                    next = T.apply_power(n, y);
                    applications += T.power_cost(n);
                }
                break;
            }
        }

        if (!next || !T.contains(*next)) {
            traj.stop_reason = StopReason::domain_exit;
            break;
        }
        const double step_norm = space.distance(*next, x);
        traj.iterates.push_back(std::move(*next));
        record(k + 1, step_norm, applications);
        if (config.stop_tolerance > 0.0 && step_norm <= config.stop_tolerance) {
            traj.stop_reason = StopReason::tolerance;
            break;
        }
    }
    return traj;
}

double linear_rate_oracle(Scheme scheme, double q, double alpha, std::size_t n) {
    if (!(q > 0.0 && q < 1.0)) throw ParameterError("q must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
    if (n == 0) throw ParameterError("steps are indexed from n = 1");
    switch (scheme) {
        case Scheme::picard: return q;
        case Scheme::mann: return 1.0 - alpha * (1.0 - q);
        case Scheme::pm_hybrid: return q * (1.0 - alpha * (1.0 - q));
        case Scheme::modified_pm_hybrid: {
            const double qn = std::pow(q, static_cast<double>(n));
            return qn * (1.0 - alpha * (1.0 - qn));
        }
        default:
            throw ParameterError("no closed-form rate for scheme '" + std::string(to_string(scheme)) +
                                 "'");
    }
}

}  // namespace fixpt
