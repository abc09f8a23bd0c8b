#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fixpt/analysis.hpp"
#include "fixpt/catalog.hpp"
#include "fixpt/cli.hpp"
#include "fixpt/errors.hpp"
#include "fixpt/report.hpp"
#include "fixpt/scenario.hpp"
#include "fixpt/schemes.hpp"

namespace py = pybind11;
using namespace fixpt;

namespace {

// Results cross the boundary as plain dicts through the json module.
py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_python(const py::object& o) {
    return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Mapping build_mapping(const std::string& id, const py::dict& params, std::size_t dim, double p) {
    return make_catalog_mapping(id, params_from_json(from_python(params), "params"), NormedSpace(dim, p));
}

std::optional<Schedule> optional_schedule(const py::object& o, const std::string& path) {
    if (o.is_none()) return std::nullopt;
    return schedule_from_json(from_python(o), path);
}

json trajectory_json(const Trajectory& traj, const Mapping& m) {
    json j = trajectory_header(traj, m);
    json iterates = json::array();
    for (const auto& x : traj.iterates) iterates.push_back(as_json(x));
    j["iterates"] = std::move(iterates);
    json records = json::array();
    for (const auto& r : traj.records) {
        records.push_back({{"step_norm", r.step_norm},
                           {"residual_T", r.residual_T},
                           {"residual_Tn", r.residual_Tn},
                           {"dist_to_known_fp", r.dist_to_known_fp ? json(*r.dist_to_known_fp) : json(nullptr)},
                           {"applications", r.applications}});
    }
    j["records"] = std::move(records);
    return j;
}

RunConfig run_config(const std::string& mapping, const py::dict& params, const std::string& scheme,
                     const py::object& alpha, const py::object& beta, const std::vector<double>& x0,
                     std::size_t max_steps, double stop_tolerance, double p) {
    return RunConfig{.scheme = scheme_from_string(scheme),
                     .mapping = build_mapping(mapping, params, x0.size(), p),
                     .alpha = schedule_from_json(from_python(alpha), "alpha"),
                     .beta = optional_schedule(beta, "beta"),
                     .x0 = Vector(x0),
                     .max_steps = max_steps,
                     .stop_tolerance = stop_tolerance};
}

}  // namespace

PYBIND11_MODULE(_fixpt, m) {
    m.doc() = "Fixed-point iteration schemes, certifiers and convergence checks";

    auto base = py::register_exception<Error>(m, "FixptError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<DomainViolation>(m, "DomainViolation", base.ptr());
    py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());
    py::register_exception<InfeasibleConstraint>(m, "InfeasibleConstraint", base.ptr());

    m.def("catalog_ids", &catalog_ids);

    m.def(
        "norm", [](const std::vector<double>& x, double p) { return NormedSpace(x.size(), p).norm(Vector(x)); },
        py::arg("x"), py::arg("p") = 2.0);

    m.def(
        "modulus",
        [](double epsilon, double p, std::size_t dim, std::size_t samples, std::uint64_t seed) {
            return to_python(as_json(modulus_of_convexity_estimate(NormedSpace(dim, p), epsilon, samples, seed)));
        },
        py::arg("epsilon"), py::arg("p") = 2.0, py::arg("dim") = 2, py::arg("samples") = 100000,
        py::arg("seed") = 0);

    m.def(
        "apply_power",
        [](const std::string& mapping, std::size_t n, const std::vector<double>& x, const py::dict& params,
           double p) {
            const auto map = build_mapping(mapping, params, x.size(), p);
            const auto y = map.apply_power(n, Vector(x));
            return std::vector<double>(y.coords().begin(), y.coords().end());
        },
        py::arg("mapping"), py::arg("n"), py::arg("x"), py::arg("params") = py::dict(), py::arg("p") = 2.0);

    m.def(
        "run",
        [](const std::string& mapping, const std::string& scheme, const py::object& alpha,
           const std::vector<double>& x0, const py::dict& params, const py::object& beta, std::size_t max_steps,
           double stop_tolerance, double p) {
            const auto cfg = run_config(mapping, params, scheme, alpha, beta, x0, max_steps, stop_tolerance, p);
            return to_python(trajectory_json(run_scheme(cfg), cfg.mapping));
        },
        py::arg("mapping"), py::arg("scheme"), py::arg("alpha"), py::arg("x0"), py::arg("params") = py::dict(),
        py::arg("beta") = py::none(), py::arg("max_steps") = kDefaultMaxSteps,
        py::arg("stop_tolerance") = kDefaultStopTolerance, py::arg("p") = 2.0);

    m.def(
        "compare",
        [](const std::string& mapping, const std::vector<std::string>& schemes, const py::object& alpha,
           const std::vector<double>& x0, double target, const py::dict& params, const py::object& beta,
           std::size_t max_steps, double p) {
            const auto cfg = run_config(mapping, params, "picard", alpha, beta, x0, max_steps, 0.0, p);
            std::vector<Scheme> list;
            for (const auto& s : schemes) list.push_back(scheme_from_string(s));
            return to_python(as_json(compare_schemes(cfg, list, target)));
        },
        py::arg("mapping"), py::arg("schemes"), py::arg("alpha"), py::arg("x0"), py::arg("target") = 1e-6,
        py::arg("params") = py::dict(), py::arg("beta") = py::none(), py::arg("max_steps") = kDefaultMaxSteps,
        py::arg("p") = 2.0);

    m.def(
        "certify",
        [](const std::string& mapping, const std::string& cls, const py::dict& params, const py::object& schedule,
           std::optional<double> lipschitz, std::size_t n_max, std::size_t samples, std::uint64_t seed,
           std::size_t dim, double p) {
            const auto map = build_mapping(mapping, params, dim, p);
            return to_python(as_json(certify_mapping(map, certify_class_from_string(cls),
                                                     optional_schedule(schedule, "schedule"), lipschitz, n_max,
                                                     samples, seed)));
        },
        py::arg("mapping"), py::arg("cls"), py::arg("params") = py::dict(), py::arg("schedule") = py::none(),
        py::arg("lipschitz") = py::none(), py::arg("n_max") = kDefaultCertifyNMax,
        py::arg("samples") = kDefaultSamples, py::arg("seed") = 0, py::arg("dim") = 1, py::arg("p") = 2.0);

    m.def(
        "check_lemma21",
        [](const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& delta,
           std::optional<std::size_t> n) { return to_python(as_json(check_lemma21(a, b, delta, n.value_or(a.size())))); },
        py::arg("a"), py::arg("b"), py::arg("delta"), py::arg("n") = py::none());

    m.def(
        "run_scenario",
        [](const std::string& text, std::uint64_t seed) {
            const auto prepared = prepare_scenario(parse_scenario(text));
            const auto result = execute_scenario(prepared, seed);
            json checks = json::array();
            for (const auto& c : result.checks) {
                checks.push_back({{"name", c.name}, {"verdict", c.verdict}, {"details", c.details}});
            }
            return to_python({{"trajectory", trajectory_json(result.trajectory, prepared.config.mapping)},
                              {"checks", std::move(checks)},
                              {"passed", result.all_passed()}});
        },
        py::arg("text"), py::arg("seed") = 0);
}
