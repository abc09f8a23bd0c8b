#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

#include "fixpt/analysis.hpp"
#include "fixpt/mapping.hpp"
#include "fixpt/schedule.hpp"
#include "fixpt/schemes.hpp"
#include "fixpt/space.hpp"

namespace fixpt {

using json = nlohmann::ordered_json;

json as_json(const Vector& v);
json as_json(const Schedule& s);
json as_json(const ModulusEstimate& m);
json as_json(const Certificate& c);
json as_json(const ScheduleVerdict& v);
json as_json(const LimitVerdict& v);
json as_json(const Lemma21Report& r);
json as_json(const Lemma22Report& r);
json as_json(const Theorem31Report& r);
/// Per-step distances are omitted; they are in the trajectory CSV.
json as_json(const Theorem32Report& r);
json as_json(const FejerReport& r);
json as_json(const Theorem33Report& r);
json as_json(const Phi& phi);
json as_json(const RateReport& r);

/// Header object describing a trajectory: scheme, schedules, stop reason and
/// the CSV column names.
json trajectory_header(const Trajectory& traj, const Mapping& m);

/// Columns: n, x_0 .. x_{d-1}, step_norm, residual_T, residual_Tn,
/// dist_to_known_fp. n counts steps taken; numbers use the shortest
/// round-trip form; an unknown distance is an empty field.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Columns: scheme, steps_to_target, applications_to_target, steps,
/// total_applications, final_error, stop_reason. Unreached targets are empty.
void write_rate_csv(std::ostream& out, const RateReport& r);

/// Aligned-column rendering for terminals.
std::string to_text(const RateReport& r);
std::string to_text(const Certificate& c);

}  // namespace fixpt
