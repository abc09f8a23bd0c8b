#include "fixpt/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "fixpt/format.hpp"

namespace fixpt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json optional_index(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

/// JSON has no infinities; they only appear for empty sample sets.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json as_json(const Vector& v) {
    json arr = json::array();
    for (double x : v.coords()) arr.push_back(x);
    return arr;
}

json as_json(const Schedule& s) {
    json j;
    j["kind"] = std::string(s.kind_name());
    std::visit(overloaded{
                   [&](const Schedule::Constant& c) { j["value"] = c.value; },
                   [&](const Schedule::HarmonicTail& h) {
                       j["scale"] = h.scale;
                       j["shift"] = h.shift;
                   },
                   [&](const Schedule::Geometric& g) {
                       j["ratio"] = g.ratio;
                       j["scale"] = g.scale;
                   },
                   [&](const Schedule::Table& t) {
                       j["values"] = t.values;
                       j["tail"] = t.tail;
                   },
                   [&](const Schedule::Formula& f) {
                       j["offset"] = f.offset;
                       j["scale"] = f.scale;
                       j["ratio"] = f.ratio;
                       j["power"] = f.power;
                       j["shift"] = f.shift;
                   },
               },
               s.params());
    return j;
}

json as_json(const ModulusEstimate& m) {
    return json{{"epsilon", m.epsilon},
                {"estimate", m.estimate},
                {"sample_count", m.sample_count},
                {"admissible_count", m.admissible_count},
                {"best_witness", json::array({as_json(m.best_witness.first),
                                              as_json(m.best_witness.second)})}};
}

json as_json(const Certificate& c) {
    return json{{"property", c.property_name},
                {"n_range", json::array({c.n_min, c.n_max})},
                {"sample_count", c.sample_count},
                {"max_violation", finite_or_null(c.max_violation)},
                {"witness", json{{"x", as_json(c.witness.x)},
                                 {"y", as_json(c.witness.y)},
                                 {"n", c.witness.n}}},
                {"verdict", std::string(to_string(c.verdict))}};
}

json as_json(const ScheduleVerdict& v) {
    return json{{"range", std::string(to_string(v.range))},
                {"divergence", std::string(to_string(v.divergence))},
                {"alpha_lower", v.alpha_lower},
                {"alpha_upper", v.alpha_upper},
                {"diagnostics", v.diagnostics}};
}

json as_json(const LimitVerdict& v) {
    return json{{"verdict", std::string(to_string(v.kind))},
                {"last_value", v.last_value},
                {"tail_oscillation", v.tail_oscillation},
                {"window", v.window},
                {"estimated_limit", optional_number(v.estimated_limit)}};
}

json as_json(const Lemma21Report& r) {
    return json{{"recurrence_holds", r.recurrence_holds},
                {"first_violation", optional_index(r.first_violation)},
                {"violation_count", r.violation_count},
                {"delta_summable", r.delta_summable},
                {"b_summable", r.b_summable},
                {"hypotheses_hold", r.hypotheses_hold},
                {"zero_subsequence", r.zero_subsequence},
                {"limit", as_json(r.limit)}};
}

json as_json(const Lemma22Report& r) {
    return json{{"outcome", std::string(to_string(r.outcome))},
                {"hypotheses_hold", r.hypotheses_hold},
                {"space_uniformly_convex", r.space_uniformly_convex},
                {"limsup_x", r.limsup_x},
                {"limsup_y", r.limsup_y},
                {"mix_deviation", r.mix_deviation},
                {"tail_max_gap", r.tail_max_gap},
                {"diagnostics", r.diagnostics}};
}

json as_json(const Theorem31Report& r) {
    json limits = json::array();
    for (const auto& l : r.distance_limits) limits.push_back(as_json(l));
    return json{{"passed", r.passed},
                {"part_i", json{{"passed", r.part_i}, {"distance_limits", limits}}},
                {"part_ii", json{{"passed", r.part_ii}, {"residual_Tn_tail_max", r.residual_Tn_tail_max}}},
                {"part_iii", json{{"passed", r.part_iii},
                                  {"residual_T_tail_max", r.residual_T_tail_max},
                                  {"cauchy_tail", r.cauchy_tail},
                                  {"limit_point", as_json(r.limit_point)},
                                  {"limit_residual", r.limit_residual}}},
                {"warnings", r.warnings}};
}

json as_json(const Theorem32Report& r) {
    return json{{"passed", r.passed},
                {"outcome", std::string(to_string(r.outcome))},
                {"liminf_estimate", r.liminf_estimate},
                {"tail_max", r.tail_max}};
}

json as_json(const FejerReport& r) {
    return json{{"passed", r.passed},
                {"step_bound_holds", r.step_bound_holds},
                {"max_step_excess", finite_or_null(r.max_step_excess)},
                {"first_violation", optional_index(r.first_violation)},
                {"telescoped_holds", r.telescoped_holds},
                {"telescoped_max_increase", finite_or_null(r.telescoped_max_increase)}};
}

json as_json(const Theorem33Report& r) {
    return json{{"passed", r.passed},
                {"residual_to_zero", json{{"passed", r.residual_to_zero},
                                          {"residual_T_tail_max", r.residual_T_tail_max}}},
                {"condition_I_chain", json{{"passed", r.condition_I_chain},
                                           {"max_chain_excess", finite_or_null(r.max_chain_excess)}}},
                {"distance_to_zero", json{{"passed", r.distance_to_zero},
                                          {"distance_tail_max", r.distance_tail_max}}}};
}

json as_json(const Phi& phi) {
    switch (phi.kind()) {
        case Phi::Kind::linear: return json{{"kind", "linear"}, {"lambda", phi.lambda()}};
        case Phi::Kind::power:
            return json{{"kind", "power"}, {"lambda", phi.lambda()}, {"gamma", phi.gamma()}};
        case Phi::Kind::table:
            return json{{"kind", "table"}, {"t", phi.grid()}, {"values", phi.values()}};
    }
    return json{};
}

json as_json(const RateReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back(json{{"scheme", std::string(to_string(row.scheme))},
                            {"steps_to_target", optional_index(row.steps_to_target)},
                            {"applications_to_target", optional_index(row.applications_to_target)},
                            {"steps", row.steps},
                            {"total_applications", row.total_applications},
                            {"final_error", row.final_error},
                            {"stop_reason", std::string(to_string(row.stop_reason))}});
    }
    return json{{"target_error", r.target_error}, {"rows", rows}};
}

json trajectory_header(const Trajectory& traj, const Mapping& m) {
    json columns = json::array({"n"});
    const std::size_t d = traj.iterates.empty() ? 0 : traj.iterates.front().dim();
    for (std::size_t i = 0; i < d; ++i) columns.push_back("x_" + std::to_string(i));
    for (const char* c : {"step_norm", "residual_T", "residual_Tn", "dist_to_known_fp"}) {
        columns.push_back(c);
    }
    return json{{"scheme", std::string(to_string(traj.scheme))},
                {"mapping", m.name()},
                {"space", json{{"dim", m.space().dim()},
                               {"p", m.space().is_infinity_norm() ? json("inf") : json(m.space().p())}}},
                {"alpha", as_json(traj.alpha)},
                {"beta", traj.beta ? as_json(*traj.beta) : json(nullptr)},
                {"steps", traj.steps()},
                {"applications", traj.records.empty() ? 0 : traj.records.back().applications},
                {"stop_reason", std::string(to_string(traj.stop_reason))},
                {"columns", columns}};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "n";
    const std::size_t d = traj.iterates.empty() ? 0 : traj.iterates.front().dim();
    for (std::size_t i = 0; i < d; ++i) out << ",x_" << i;
    out << ",step_norm,residual_T,residual_Tn,dist_to_known_fp\n";
    for (std::size_t k = 0; k < traj.iterates.size(); ++k) {
        const auto& r = traj.records[k];
        out << k;
        for (double c : traj.iterates[k].coords()) out << ',' << format_double(c);
        out << ',' << format_double(r.step_norm) << ',' << format_double(r.residual_T) << ','
            << format_double(r.residual_Tn) << ',';
        if (r.dist_to_known_fp) out << format_double(*r.dist_to_known_fp);
        out << '\n';
    }
}

void write_rate_csv(std::ostream& out, const RateReport& r) {
    out << "scheme,steps_to_target,applications_to_target,steps,total_applications,final_error,"
           "stop_reason\n";
    for (const auto& row : r.rows) {
        out << to_string(row.scheme) << ',';
        if (row.steps_to_target) out << *row.steps_to_target;
        out << ',';
        if (row.applications_to_target) out << *row.applications_to_target;
        out << ',' << row.steps << ',' << row.total_applications << ','
            << format_double(row.final_error) << ',' << to_string(row.stop_reason) << '\n';
    }
}

std::string to_text(const RateReport& r) {
    std::ostringstream out;
    out << "target error " << format_double(r.target_error) << '\n';
    out << std::left << std::setw(20) << "scheme" << std::right << std::setw(10) << "steps*"
        << std::setw(12) << "apps*" << std::setw(10) << "steps" << std::setw(12) << "apps"
        << std::setw(26) << "final_error" << "  stop\n";
    for (const auto& row : r.rows) {
        out << std::left << std::setw(20) << to_string(row.scheme) << std::right << std::setw(10)
            << (row.steps_to_target ? std::to_string(*row.steps_to_target) : "-") << std::setw(12)
            << (row.applications_to_target ? std::to_string(*row.applications_to_target) : "-")
            << std::setw(10) << row.steps << std::setw(12) << row.total_applications
            << std::setw(26) << format_double(row.final_error) << "  "
            << to_string(row.stop_reason) << '\n';
    }
    return out.str();
}

std::string to_text(const Certificate& c) {
    std::ostringstream out;
    out << c.property_name << ": " << to_string(c.verdict) << " (n in [" << c.n_min << ", "
        << c.n_max << "], " << c.sample_count << " samples, max violation "
        << format_double(c.max_violation) << ")\n";
    if (c.verdict == Verdict::refuted) {
        out << "  witness x = " << as_json(c.witness.x).dump() << ", y = "
            << as_json(c.witness.y).dump() << ", n = " << c.witness.n << '\n';
    }
    return out.str();
}

}  // namespace fixpt
