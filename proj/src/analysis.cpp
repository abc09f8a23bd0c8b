#include "fixpt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "fixpt/errors.hpp"
#include "fixpt/format.hpp"
#include "fixpt/random.hpp"

namespace fixpt {

namespace {

double tail_max(std::span<const double> seq, std::size_t window) {
    double m = 0.0;
    for (std::size_t i = seq.size() - window; i < seq.size(); ++i) m = std::max(m, seq[i]);
    return m;
}

std::vector<double> column(const Trajectory& traj, double StepRecord::*field) {
    std::vector<double> out;
    out.reserve(traj.records.size());
    for (const auto& r : traj.records) out.push_back(r.*field);
    return out;
}

void require_nonnegative(std::span<const double> s, std::size_t N, const char* name) {
    if (s.size() < N) {
        throw ContractViolation(std::string("sequence ") + name + " has fewer than N entries");
    }
    for (std::size_t i = 0; i < N; ++i) {
        if (!(s[i] >= 0.0)) {
            throw ContractViolation(std::string("sequence ") + name + " has a negative entry at n = " +
                                    std::to_string(i + 1));
        }
    }
}

const std::vector<Vector>& finite_fixed_set(const Mapping& m) {
    const auto& fps = m.meta().known_fixed_points;
    if (!fps || fps->empty()) {
        throw ContractViolation("mapping '" + m.name() + "' has no finite known fixed set");
    }
    return *fps;
}

}  // namespace

std::size_t tail_window(std::size_t length) {
    const std::size_t quarter = (length + 3) / 4;
    return std::min(length, std::max(quarter, std::min(kMinTailWindow, length)));
}

std::string_view to_string(LimitVerdict::Kind k) {
    switch (k) {
        case LimitVerdict::Kind::converged: return "converged";
        case LimitVerdict::Kind::diverged: return "diverged";
        case LimitVerdict::Kind::undetermined: return "undetermined";
    }
    return "undetermined";
}

LimitVerdict assess_limit(std::span<const double> seq, double tolerance) {
    LimitVerdict v;
    if (seq.empty()) return v;
    v.window = tail_window(seq.size());
    v.last_value = seq.back();
    const auto tail = seq.subspan(seq.size() - v.window);
    const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    v.tail_oscillation = *hi - *lo;
    if (v.tail_oscillation <= tolerance) {
        v.kind = LimitVerdict::Kind::converged;
        v.estimated_limit = v.last_value;
        return v;
    }
    if (seq.size() >= 2 * v.window) {
        const auto prev = seq.subspan(seq.size() - 2 * v.window, v.window);
        const auto [plo, phi] = std::minmax_element(prev.begin(), prev.end());
        if (v.tail_oscillation >= *phi - *plo) {
            v.kind = LimitVerdict::Kind::diverged;
            return v;
        }
    }
    v.kind = LimitVerdict::Kind::undetermined;
    return v;
}

Lemma21Report check_lemma21(std::span<const double> a, std::span<const double> b,
                            std::span<const double> delta, std::size_t N) {
    if (N == 0) throw ContractViolation("N must be >= 1");
    require_nonnegative(a, N, "a");
    require_nonnegative(b, N, "b");
    require_nonnegative(delta, N, "delta");

    Lemma21Report rep;
    for (std::size_t i = 0; i + 1 < N; ++i) {
        const double rhs = (1.0 + delta[i]) * a[i] + b[i];
        if (a[i + 1] > rhs + 1e-12 * std::max(1.0, rhs)) {
            if (!rep.first_violation) rep.first_violation = i + 1;
            ++rep.violation_count;
        }
    }
    rep.recurrence_holds = rep.violation_count == 0;

    const std::size_t w = tail_window(N);
    auto tail_mass = [&](std::span<const double> s) {
        double m = 0.0;
        for (std::size_t i = N - w; i < N; ++i) m += s[i];
        return m;
    };
    rep.delta_summable = tail_mass(delta) <= kLimitTolerance;
    rep.b_summable = tail_mass(b) <= kLimitTolerance;
    rep.hypotheses_hold = rep.recurrence_holds && rep.delta_summable && rep.b_summable;

    const auto head = a.first(N);
    rep.limit = assess_limit(head);
    const auto tail = head.subspan(N - w);
    rep.zero_subsequence = *std::min_element(tail.begin(), tail.end()) <= kLimitTolerance;
    if (!rep.hypotheses_hold) {
        rep.limit.kind = LimitVerdict::Kind::undetermined;
        rep.limit.estimated_limit.reset();
    } else if (rep.zero_subsequence) {
        rep.limit.estimated_limit = 0.0;
    }
    return rep;
}

std::string_view to_string(LemmaOutcome o) {
    switch (o) {
        case LemmaOutcome::conclusion_holds: return "conclusion_holds";
        case LemmaOutcome::conclusion_fails: return "conclusion_fails";
        case LemmaOutcome::hypothesis_failure: return "hypothesis_failure";
    }
    return "hypothesis_failure";
}

Lemma22Report check_lemma22_witness(std::span<const double> t, double a, double b,
                                    std::span<const Vector> x, std::span<const Vector> y,
                                    double r, const NormedSpace& space, std::size_t N,
                                    Lemma22Tolerances tol) {
    if (N == 0) throw ContractViolation("N must be >= 1");
    if (!(a > 0.0 && a <= b && b < 1.0)) {
        throw ContractViolation("bounds must satisfy 0 < a <= b < 1");
    }
    if (t.size() < N || x.size() < N || y.size() < N) {
        throw ContractViolation("sequences have fewer than N entries");
    }
    if (!(r >= 0.0)) throw ContractViolation("r must be >= 0");
    for (std::size_t i = 0; i < N; ++i) {
        if (!(t[i] >= a && t[i] <= b)) {
            throw ContractViolation("t_" + std::to_string(i + 1) + " = " + format_double(t[i]) +
                                    " outside [a, b]");
        }
    }

    Lemma22Report rep;
    rep.space_uniformly_convex = space.uniformly_convex();
    const std::size_t w = tail_window(N);
    for (std::size_t i = N - w; i < N; ++i) {
        rep.limsup_x = std::max(rep.limsup_x, space.norm(x[i]));
        rep.limsup_y = std::max(rep.limsup_y, space.norm(y[i]));
        const double mix = space.norm(convex_combination(x[i], y[i], t[i]));
        rep.mix_deviation = std::max(rep.mix_deviation, std::abs(mix - r));
        rep.tail_max_gap = std::max(rep.tail_max_gap, space.distance(x[i], y[i]));
    }

    if (!rep.space_uniformly_convex) {
        rep.diagnostics.push_back("space is not uniformly convex (p = " + format_double(space.p()) +
                                  ")");
    }
    if (rep.limsup_x > r + tol.hypothesis) rep.diagnostics.push_back("limsup ||x_n|| exceeds r");
    if (rep.limsup_y > r + tol.hypothesis) rep.diagnostics.push_back("limsup ||y_n|| exceeds r");
    if (rep.mix_deviation > tol.hypothesis) {
        rep.diagnostics.push_back("||(1 - t_n) x_n + t_n y_n|| does not approach r");
    }
    rep.hypotheses_hold = rep.diagnostics.empty();
    if (!rep.hypotheses_hold) {
        rep.outcome = LemmaOutcome::hypothesis_failure;
    } else {
        rep.outcome = rep.tail_max_gap <= tol.conclusion ? LemmaOutcome::conclusion_holds
                                                         : LemmaOutcome::conclusion_fails;
    }
    return rep;
}

Theorem31Report verify_theorem31(const Trajectory& traj, const Mapping& m) {
    if (traj.scheme != Scheme::modified_pm_hybrid) {
        throw ScopeError("theorem31 applies to modified_pm_hybrid trajectories, got " +
                         std::string(to_string(traj.scheme)));
    }
    const auto& fps = finite_fixed_set(m);
    const NormedSpace& space = m.space();
    const std::size_t len = traj.iterates.size();
    const std::size_t w = tail_window(len);

    Theorem31Report rep;
    if (!space.uniformly_convex()) {
        rep.warnings.push_back("space l_" + format_double(space.p()) +
                               " is not uniformly convex; the convergence hypotheses fail");
    }
    if (const auto a = effective_near_sequence(m); !a || !a->summable()) {
        rep.warnings.push_back("no summable near-sequence a_n is declared for '" + m.name() + "'");
    }

    rep.part_i = true;
    for (const auto& p : fps) {
        std::vector<double> d(len);
        for (std::size_t k = 0; k < len; ++k) d[k] = space.distance(traj.iterates[k], p);
        rep.distance_limits.push_back(assess_limit(d));
        rep.part_i = rep.part_i && rep.distance_limits.back().kind == LimitVerdict::Kind::converged;
    }

    const auto res_tn = column(traj, &StepRecord::residual_Tn);
    const auto res_t = column(traj, &StepRecord::residual_T);
    rep.residual_Tn_tail_max = tail_max(res_tn, w);
    rep.part_ii = rep.residual_Tn_tail_max <= kRegularityTolerance;

    rep.residual_T_tail_max = tail_max(res_t, w);
    rep.limit_point = traj.iterates.back();
    for (std::size_t k = len - w; k < len; ++k) {
        rep.cauchy_tail = std::max(rep.cauchy_tail, space.distance(traj.iterates[k], rep.limit_point));
    }
    rep.limit_residual = fixed_point_residual(m, rep.limit_point);
    rep.part_iii = rep.residual_T_tail_max <= kRegularityTolerance &&
                   rep.cauchy_tail <= kLimitTolerance && rep.limit_residual <= kFixedPointTolerance;
    rep.passed = rep.part_i && rep.part_ii && rep.part_iii;
    return rep;
}

std::string_view to_string(Theorem32Report::Outcome o) {
    switch (o) {
        case Theorem32Report::Outcome::consistent: return "consistent";
        case Theorem32Report::Outcome::inconsistent: return "inconsistent";
        case Theorem32Report::Outcome::no_evidence: return "no_evidence";
    }
    return "no_evidence";
}

namespace {

Theorem32Report assess_theorem32(std::vector<double> distances) {
    Theorem32Report rep;
    rep.distances = std::move(distances);
    const std::size_t w = tail_window(rep.distances.size());
    const auto tail = std::span<const double>(rep.distances).last(w);
    rep.liminf_estimate = *std::min_element(tail.begin(), tail.end());
    rep.tail_max = *std::max_element(tail.begin(), tail.end());
    if (rep.liminf_estimate > kLimitTolerance) {
        rep.outcome = Theorem32Report::Outcome::no_evidence;
    } else if (rep.tail_max <= kLimitTolerance) {
        rep.outcome = Theorem32Report::Outcome::consistent;
    } else {
        rep.outcome = Theorem32Report::Outcome::inconsistent;
    }
    rep.passed = rep.outcome == Theorem32Report::Outcome::consistent;
    return rep;
}

}  // namespace

Theorem32Report verify_theorem32(const Trajectory& traj, std::span<const Vector> fixed_set,
                                 const NormedSpace& space) {
    if (fixed_set.empty()) throw ContractViolation("fixed set must be nonempty");
    if (traj.iterates.empty()) throw ContractViolation("trajectory is empty");
    std::vector<double> d;
    d.reserve(traj.iterates.size());
    for (const auto& x : traj.iterates) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : fixed_set) best = std::min(best, space.distance(x, p));
        d.push_back(best);
    }
    return assess_theorem32(std::move(d));
}

Theorem32Report verify_theorem32(const Trajectory& traj, const Mapping& m) {
    if (!m.has_known_fixed_set()) {
        throw ContractViolation("mapping '" + m.name() + "' has no known fixed set");
    }
    if (m.meta().fixed_set_is_domain) {
        std::vector<double> d;
        for (const auto& x : traj.iterates) d.push_back(m.distance_to_fixed_set(x).value_or(0.0));
        return assess_theorem32(std::move(d));
    }
    return verify_theorem32(traj, *m.meta().known_fixed_points, m.space());
}

FejerReport verify_fejer_bound(const Trajectory& traj, const Mapping& m) {
    const auto a = effective_near_sequence(m);
    if (!a) {
        throw ContractViolation("mapping '" + m.name() + "' declares no near-sequence a_n");
    }
    const auto& fps = finite_fixed_set(m);
    const NormedSpace& space = m.space();
    const std::size_t steps = traj.steps();

    std::vector<double> b(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const std::size_t n = k + 1;
        b[k] = (1.0 + traj.alpha.at(n)) * a->at(n);
    }

    FejerReport rep;
    rep.max_step_excess = -std::numeric_limits<double>::infinity();
    rep.telescoped_max_increase = -std::numeric_limits<double>::infinity();
    for (const auto& p : fps) {
        std::vector<double> d(steps + 1);
        for (std::size_t k = 0; k <= steps; ++k) d[k] = space.distance(traj.iterates[k], p);
        for (std::size_t k = 0; k < steps; ++k) {
            const double excess = d[k + 1] - d[k] - b[k];
            rep.max_step_excess = std::max(rep.max_step_excess, excess);
            if (excess > kFejerTolerance && (!rep.first_violation || *rep.first_violation > k + 1)) {
                rep.first_violation = k + 1;
            }
        }
        // V_k = d_k + sum_{j >= k} b_j over the recorded steps.
        std::vector<double> v(steps + 1);
        double suffix = 0.0;
        for (std::size_t k = steps + 1; k-- > 0;) {
            v[k] = d[k] + suffix;
            if (k > 0) suffix += b[k - 1];
        }
        for (std::size_t k = 0; k < steps; ++k) {
            rep.telescoped_max_increase = std::max(rep.telescoped_max_increase, v[k + 1] - v[k]);
        }
    }
    if (steps == 0) {
        rep.max_step_excess = 0.0;
        rep.telescoped_max_increase = 0.0;
    }
    rep.step_bound_holds = rep.max_step_excess <= kFejerTolerance;
    rep.telescoped_holds = rep.telescoped_max_increase <= kFejerTolerance;
    rep.passed = rep.step_bound_holds && rep.telescoped_holds;
    return rep;
}

Phi::Phi(Kind kind, double lambda, double gamma, std::vector<double> grid,
         std::vector<double> values)
    : kind_(kind), lambda_(lambda), gamma_(gamma), grid_(std::move(grid)),
      values_(std::move(values)) {}

Phi Phi::linear(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("phi: lambda must be > 0");
    return Phi(Kind::linear, lambda, 1.0, {}, {});
}

Phi Phi::power(double lambda, double gamma) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("phi: lambda must be > 0");
    if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ParameterError("phi: gamma must be >= 1");
    return Phi(Kind::power, lambda, gamma, {}, {});
}

Phi Phi::table(std::vector<double> t, std::vector<double> values) {
    if (t.size() < 2 || t.size() != values.size()) {
        throw ParameterError("phi table needs at least two knots and matching values");
    }
    if (t[0] != 0.0 || values[0] != 0.0) throw ParameterError("phi table must start at (0, 0)");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1]) || !std::isfinite(t[i])) {
            throw ParameterError("phi table grid must be strictly increasing");
        }
        if (!(values[i] >= values[i - 1]) || !std::isfinite(values[i])) {
            throw ParameterError("phi table values must be nondecreasing");
        }
        if (!(values[i] > 0.0)) throw ParameterError("phi must be positive for t > 0");
    }
    return Phi(Kind::table, 0.0, 0.0, std::move(t), std::move(values));
}

double Phi::operator()(double t) const {
    if (!(t >= 0.0)) throw ContractViolation("phi is defined on [0, inf)");
    switch (kind_) {
        case Kind::linear: return lambda_ * t;
        case Kind::power: return lambda_ * std::pow(t, gamma_);
        case Kind::table: {
            if (t >= grid_.back()) return values_.back();
            const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
            const double s = (t - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
            return values_[i - 1] + s * (values_[i] - values_[i - 1]);
        }
    }
    return 0.0;
}

Certificate certify_condition_I(const Mapping& m, const Phi& phi, std::size_t sample_count,
                                std::uint64_t seed) {
    if (!m.has_known_fixed_set()) {
        throw ContractViolation("condition (I) needs a known fixed set for '" + m.name() + "'");
    }
    std::vector<Vector> points;
    if (m.meta().known_fixed_points) {
        for (const auto& p : *m.meta().known_fixed_points) points.push_back(p);
    }
    for (const auto& d : m.meta().discontinuities) {
        if (!m.contains(d)) continue;
        points.push_back(d);
        for (double off : {1e-3, 1e-6}) {
            for (std::size_t i = 0; i < d.dim(); ++i) {
                for (double sign : {-1.0, 1.0}) {
                    Vector z = d + Vector::basis(d.dim(), i, sign * off);
                    if (m.contains(z)) points.push_back(std::move(z));
                }
            }
        }
    }
    if (m.domain().kind() == Domain::Kind::box) {
        points.emplace_back(std::vector<double>(m.domain().lower().begin(), m.domain().lower().end()));
        points.emplace_back(std::vector<double>(m.domain().upper().begin(), m.domain().upper().end()));
    }
    if (points.size() > sample_count) points.erase(points.begin() + static_cast<std::ptrdiff_t>(sample_count), points.end());
    Rng rng(seed);
    while (points.size() < sample_count) points.push_back(sample_domain(m.domain(), m.space(), rng));

    Certificate cert;
    cert.property_name = "condition_I";
    cert.n_min = 1;
    cert.n_max = 1;
    cert.sample_count = sample_count;
    cert.max_violation = -std::numeric_limits<double>::infinity();
    for (const auto& x : points) {
        const double dist = *m.distance_to_fixed_set(x);
        const double v = phi(dist) - fixed_point_residual(m, x);
        if (v > cert.max_violation) {
            cert.max_violation = v;
            Vector nearest = x;
            if (m.meta().known_fixed_points) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& p : *m.meta().known_fixed_points) {
                    const double dp = m.space().distance(x, p);
                    if (dp < best) {
                        best = dp;
                        nearest = p;
                    }
                }
            }
            cert.witness = Witness{x, nearest, 1};
        }
    }
    if (cert.max_violation > kCertTolerance) {
        cert.verdict = Verdict::refuted;
    } else {
        cert.verdict = sample_count < 10 ? Verdict::inconclusive : Verdict::certified;
    }
    return cert;
}

ConditionIWitness make_condition_I_witness(const Mapping& m, const Phi& phi,
                                           std::size_t sample_count, std::uint64_t seed) {
    return ConditionIWitness{phi, certify_condition_I(m, phi, sample_count, seed)};
}

Theorem33Report verify_theorem33(const Trajectory& traj, const Mapping& m,
                                 const ConditionIWitness& w) {
    if (!w.certificate || w.certificate->verdict != Verdict::certified) {
        throw ScopeError("theorem33 needs a certified condition (I) witness");
    }
    if (!m.has_known_fixed_set()) {
        throw ContractViolation("mapping '" + m.name() + "' has no known fixed set");
    }
    Theorem33Report rep;
    const std::size_t len = traj.iterates.size();
    const std::size_t w_len = tail_window(len);
    const auto res_t = column(traj, &StepRecord::residual_T);
    std::vector<double> dist(len);
    rep.max_chain_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < len; ++k) {
        dist[k] = m.distance_to_fixed_set(traj.iterates[k]).value_or(0.0);
        rep.max_chain_excess = std::max(rep.max_chain_excess, w.phi(dist[k]) - res_t[k]);
    }
    rep.residual_T_tail_max = tail_max(res_t, w_len);
    rep.residual_to_zero = rep.residual_T_tail_max <= kRegularityTolerance;
    rep.condition_I_chain = rep.max_chain_excess <= kCertTolerance;
    rep.distance_tail_max = tail_max(dist, w_len);
    rep.distance_to_zero = rep.distance_tail_max <= kLimitTolerance;
    rep.passed = rep.residual_to_zero && rep.condition_I_chain && rep.distance_to_zero;
    return rep;
}

RateReport compare_schemes(const RunConfig& base, std::span<const Scheme> schemes,
                           double target_error) {
    if (!base.mapping.has_known_fixed_set()) {
        throw ConfigError("compare needs a mapping with a known fixed point");
    }
    if (!(target_error >= 0.0)) throw ConfigError("target error must be >= 0");

    std::vector<std::future<Trajectory>> runs;
    runs.reserve(schemes.size());
    for (Scheme s : schemes) {
        RunConfig cfg = base;
        cfg.scheme = s;
        if (s != Scheme::ishikawa) cfg.beta.reset();
        runs.push_back(std::async(std::launch::async, [cfg = std::move(cfg)] { return run_scheme(cfg); }));
    }

    RateReport rep;
    rep.target_error = target_error;
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        const Trajectory traj = runs[i].get();
        RateRow row;
        row.scheme = schemes[i];
        row.steps = traj.steps();
        row.total_applications = traj.records.back().applications;
        row.final_error = traj.records.back().dist_to_known_fp.value_or(0.0);
        row.stop_reason = traj.stop_reason;
        for (std::size_t k = 0; k < traj.records.size(); ++k) {
            if (traj.records[k].dist_to_known_fp.value_or(0.0) <= target_error) {
                row.steps_to_target = k;
                row.applications_to_target = traj.records[k].applications;
                break;
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace fixpt
