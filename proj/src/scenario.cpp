#include "fixpt/scenario.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "fixpt/errors.hpp"
#include "fixpt/format.hpp"

namespace fixpt {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

std::string child(const std::string& path, std::string_view key) {
    return path + "." + std::string(key);
}

std::string element(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

/// Rejects non-objects, unknown keys and missing required keys.
void expect_object(const json& j, const std::string& path,
                   std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional = {}) {
    if (!j.is_object()) fail(path, "expected an object");
    std::set<std::string_view> known(required);
    known.insert(optional.begin(), optional.end());
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) fail(child(path, key), "unknown key");
    }
    for (auto key : required) {
        if (!j.contains(std::string(key))) fail(child(path, key), "missing required key");
    }
}

double read_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

std::size_t read_count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        fail(path, "expected a nonnegative integer");
    }
    return j.get<std::size_t>();
}

std::string read_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::vector<double> read_numbers(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], element(path, i)));
    return out;
}

double number_or(const json& j, std::string_view key, double fallback, const std::string& path) {
    const std::string k(key);
    return j.contains(k) ? read_number(j[k], child(path, key)) : fallback;
}

/// Norm exponent: a number >= 1 or the string "inf".
double read_exponent(const json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return NormedSpace::kInfinity;
        fail(path, "expected a number >= 1 or \"inf\"");
    }
    const double p = read_number(j, path);
    if (p < 1.0) fail(path, "norm exponent must be >= 1");
    return p;
}

template <class Fn>
auto wrap(const std::string& path, Fn fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

constexpr CheckKind kCheckKinds[] = {CheckKind::lemma21,   CheckKind::fejer,
                                     CheckKind::theorem31, CheckKind::theorem32,
                                     CheckKind::theorem33, CheckKind::condition_I,
                                     CheckKind::certify};

constexpr CertifyClass kCertifyClasses[] = {
    CertifyClass::nonexpansive, CertifyClass::asymptotically_nonexpansive,
    CertifyClass::nearly_nonexpansive, CertifyClass::uniformly_lipschitz};

CheckSpec check_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind")) fail(path, "expected an object with a \"kind\"");
    const std::string kind = read_string(j["kind"], child(path, "kind"));
    CheckSpec c;
    bool known = false;
    for (auto k : kCheckKinds) {
        if (to_string(k) == kind) {
            c.kind = k;
            known = true;
        }
    }
    if (!known) fail(child(path, "kind"), "unknown check '" + kind + "'");

    switch (c.kind) {
        case CheckKind::lemma21:
        case CheckKind::fejer:
        case CheckKind::theorem31:
        case CheckKind::theorem32:
            expect_object(j, path, {"kind"});
            break;
        case CheckKind::theorem33:
        case CheckKind::condition_I:
            expect_object(j, path, {"kind", "phi"}, {"samples"});
            c.phi = phi_from_json(j["phi"], child(path, "phi"));
            if (j.contains("samples")) c.samples = read_count(j["samples"], child(path, "samples"));
            break;
        case CheckKind::certify: {
            expect_object(j, path, {"kind", "class"}, {"schedule", "lipschitz", "n_max", "samples"});
            c.certify_class = wrap(child(path, "class"), [&] {
                return certify_class_from_string(read_string(j["class"], child(path, "class")));
            });
            if (j.contains("schedule")) c.schedule = schedule_from_json(j["schedule"], child(path, "schedule"));
            if (j.contains("lipschitz")) {
                c.lipschitz = read_number(j["lipschitz"], child(path, "lipschitz"));
                if (!(*c.lipschitz > 0.0)) fail(child(path, "lipschitz"), "L must be > 0");
            }
            if (j.contains("n_max")) c.n_max = read_count(j["n_max"], child(path, "n_max"));
            if (j.contains("samples")) c.samples = read_count(j["samples"], child(path, "samples"));
            if (c.n_max == 0) fail(child(path, "n_max"), "must be >= 1");
            break;
        }
    }
    if (c.samples == 0) fail(child(path, "samples"), "must be >= 1");
    return c;
}

json check_to_json(const CheckSpec& c) {
    json j{{"kind", std::string(to_string(c.kind))}};
    switch (c.kind) {
        case CheckKind::theorem33:
        case CheckKind::condition_I:
            j["phi"] = as_json(*c.phi);
            j["samples"] = c.samples;
            break;
        case CheckKind::certify:
            j["class"] = std::string(to_string(*c.certify_class));
            if (c.schedule) j["schedule"] = as_json(*c.schedule);
            if (c.lipschitz) j["lipschitz"] = *c.lipschitz;
            j["n_max"] = c.n_max;
            j["samples"] = c.samples;
            break;
        default:
            break;
    }
    return j;
}

}  // namespace

std::string_view to_string(CheckKind k) {
    switch (k) {
        case CheckKind::lemma21: return "lemma21";
        case CheckKind::fejer: return "fejer";
        case CheckKind::theorem31: return "theorem31";
        case CheckKind::theorem32: return "theorem32";
        case CheckKind::theorem33: return "theorem33";
        case CheckKind::condition_I: return "condition_I";
        case CheckKind::certify: return "certify";
    }
    return "unknown";
}

std::string_view to_string(CertifyClass c) {
    switch (c) {
        case CertifyClass::nonexpansive: return "nonexpansive";
        case CertifyClass::asymptotically_nonexpansive: return "asymptotically_nonexpansive";
        case CertifyClass::nearly_nonexpansive: return "nearly_nonexpansive";
        case CertifyClass::uniformly_lipschitz: return "uniformly_lipschitz";
    }
    return "unknown";
}

CertifyClass certify_class_from_string(std::string_view name) {
    for (auto c : kCertifyClasses) {
        if (to_string(c) == name) return c;
    }
    throw ParameterError("unknown class '" + std::string(name) + "'");
}

Schedule schedule_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind")) fail(path, "expected an object with a \"kind\"");
    const std::string kind = read_string(j["kind"], child(path, "kind"));
    return wrap(path, [&] {
        if (kind == "constant") {
            expect_object(j, path, {"kind", "value"});
            return Schedule::constant(read_number(j["value"], child(path, "value")));
        }
        if (kind == "harmonic_tail") {
            expect_object(j, path, {"kind"}, {"scale", "shift"});
            return Schedule::harmonic_tail(number_or(j, "scale", 1.0, path),
                                           number_or(j, "shift", 0.0, path));
        }
        if (kind == "geometric") {
            expect_object(j, path, {"kind", "ratio"}, {"scale"});
            return Schedule::geometric(read_number(j["ratio"], child(path, "ratio")),
                                       number_or(j, "scale", 1.0, path));
        }
        if (kind == "table") {
            expect_object(j, path, {"kind", "values"}, {"tail"});
            auto values = read_numbers(j["values"], child(path, "values"));
            const double tail = j.contains("tail") ? read_number(j["tail"], child(path, "tail"))
                                : values.empty()   ? 0.0
                                                   : values.back();
            return Schedule::table(std::move(values), tail);
        }
        if (kind == "formula") {
            expect_object(j, path, {"kind"}, {"offset", "scale", "ratio", "power", "shift"});
            return Schedule::formula(number_or(j, "offset", 0.0, path), number_or(j, "scale", 1.0, path),
                                     number_or(j, "ratio", 1.0, path), number_or(j, "power", 0.0, path),
                                     number_or(j, "shift", 0.0, path));
        }
        fail(child(path, "kind"), "unknown schedule kind '" + kind + "'");
    });
}

Phi phi_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind")) fail(path, "expected an object with a \"kind\"");
    const std::string kind = read_string(j["kind"], child(path, "kind"));
    return wrap(path, [&] {
        if (kind == "linear") {
            expect_object(j, path, {"kind", "lambda"});
            return Phi::linear(read_number(j["lambda"], child(path, "lambda")));
        }
        if (kind == "power") {
            expect_object(j, path, {"kind", "lambda", "gamma"});
            return Phi::power(read_number(j["lambda"], child(path, "lambda")),
                              read_number(j["gamma"], child(path, "gamma")));
        }
        if (kind == "table") {
            expect_object(j, path, {"kind", "t", "values"});
            return Phi::table(read_numbers(j["t"], child(path, "t")),
                              read_numbers(j["values"], child(path, "values")));
        }
        fail(child(path, "kind"), "unknown phi kind '" + kind + "'");
    });
}

CatalogParams params_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    CatalogParams out;
    for (const auto& [key, value] : j.items()) out[key] = read_number(value, child(path, key));
    return out;
}

Scenario scenario_from_json(const json& doc) {
    const std::string root = "$";
    expect_object(doc, root, {"schema_version", "name", "space", "mapping", "scheme", "schedules", "x0"},
                  {"max_steps", "stop_tolerance", "checks"});
    Scenario s;
    if (!doc["schema_version"].is_number_integer() ||
        doc["schema_version"].get<long long>() != kScenarioSchemaVersion) {
        fail("$.schema_version", "expected " + std::to_string(kScenarioSchemaVersion));
    }
    s.name = read_string(doc["name"], "$.name");
    if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos) {
        fail("$.name", "must be a nonempty file-name-safe string");
    }

    const json& space = doc["space"];
    expect_object(space, "$.space", {"dim", "p"});
    s.space.dim = read_count(space["dim"], "$.space.dim");
    if (s.space.dim == 0) fail("$.space.dim", "must be >= 1");
    s.space.p = read_exponent(space["p"], "$.space.p");

    const json& mapping = doc["mapping"];
    expect_object(mapping, "$.mapping", {"id"}, {"parameters"});
    s.mapping.id = read_string(mapping["id"], "$.mapping.id");
    if (mapping.contains("parameters")) {
        s.mapping.parameters = params_from_json(mapping["parameters"], "$.mapping.parameters");
    }

    s.scheme = wrap("$.scheme", [&] { return scheme_from_string(read_string(doc["scheme"], "$.scheme")); });

    const json& schedules = doc["schedules"];
    expect_object(schedules, "$.schedules", {"alpha"}, {"beta"});
    s.alpha = schedule_from_json(schedules["alpha"], "$.schedules.alpha");
    if (schedules.contains("beta")) s.beta = schedule_from_json(schedules["beta"], "$.schedules.beta");

    s.x0 = read_numbers(doc["x0"], "$.x0");
    if (s.x0.size() != s.space.dim) {
        fail("$.x0", "has " + std::to_string(s.x0.size()) + " coordinates, space has " +
                         std::to_string(s.space.dim));
    }
    if (doc.contains("max_steps")) s.max_steps = read_count(doc["max_steps"], "$.max_steps");
    if (doc.contains("stop_tolerance")) {
        s.stop_tolerance = read_number(doc["stop_tolerance"], "$.stop_tolerance");
    }
    if (doc.contains("checks")) {
        const json& checks = doc["checks"];
        if (!checks.is_array()) fail("$.checks", "expected an array");
        for (std::size_t i = 0; i < checks.size(); ++i) {
            s.checks.push_back(check_from_json(checks[i], element("$.checks", i)));
        }
    }
    return s;
}

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("$: malformed JSON: ") + e.what());
    }
    return scenario_from_json(doc);
}

json scenario_to_json(const Scenario& s) {
    json params = json::object();
    for (const auto& [k, v] : s.mapping.parameters) params[k] = v;
    json schedules{{"alpha", as_json(s.alpha)}};
    if (s.beta) schedules["beta"] = as_json(*s.beta);
    json checks = json::array();
    for (const auto& c : s.checks) checks.push_back(check_to_json(c));
    return json{{"schema_version", s.schema_version},
                {"name", s.name},
                {"space", json{{"dim", s.space.dim},
                               {"p", std::isinf(s.space.p) ? json("inf") : json(s.space.p)}}},
                {"mapping", json{{"id", s.mapping.id}, {"parameters", params}}},
                {"scheme", std::string(to_string(s.scheme))},
                {"schedules", schedules},
                {"x0", s.x0},
                {"max_steps", s.max_steps},
                {"stop_tolerance", s.stop_tolerance},
                {"checks", checks}};
}

PreparedScenario prepare_scenario(const Scenario& s) {
    const NormedSpace space = wrap("$.space", [&] { return NormedSpace(s.space.dim, s.space.p); });
    Mapping mapping = wrap("$.mapping", [&] {
        return make_catalog_mapping(s.mapping.id, s.mapping.parameters, space);
    });
    const Vector x0 = wrap("$.x0", [&] { return Vector(s.x0); });
    if (!mapping.contains(x0)) fail("$.x0", "lies outside the domain of '" + s.mapping.id + "'");

    const auto verdict = validate_schedule(s.scheme, s.alpha, s.beta, std::max<std::size_t>(1, s.max_steps));
    if (!verdict.ok()) {
        std::string msg = std::string(to_string(s.scheme)) + " rejects the schedules";
        for (const auto& d : verdict.diagnostics) msg += "; " + d;
        fail("$.schedules", msg);
    }

    const bool finite_fp = mapping.meta().known_fixed_points && !mapping.meta().known_fixed_points->empty();
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
        const auto& c = s.checks[i];
        const std::string path = element("$.checks", i);
        const std::string name(to_string(c.kind));
        switch (c.kind) {
            case CheckKind::theorem31:
                if (s.scheme != Scheme::modified_pm_hybrid) {
                    fail(path, "theorem31 applies to modified_pm_hybrid runs only");
                }
                [[fallthrough]];
            case CheckKind::lemma21:
            case CheckKind::fejer:
                if (!finite_fp) {
                    fail(path, name + " needs a mapping with known fixed points; '" + s.mapping.id +
                                   "' declares none");
                }
                if (c.kind != CheckKind::theorem31 && !effective_near_sequence(mapping)) {
                    fail(path, name + " needs a declared near-sequence a_n");
                }
                break;
            case CheckKind::theorem32:
            case CheckKind::theorem33:
            case CheckKind::condition_I:
                if (!mapping.has_known_fixed_set()) {
                    fail(path, name + " needs a mapping with known fixed points; '" + s.mapping.id +
                                   "' declares none");
                }
                break;
            case CheckKind::certify: {
                const auto& meta = mapping.meta();
                switch (*c.certify_class) {
                    case CertifyClass::nearly_nonexpansive:
                        if (!c.schedule && !effective_near_sequence(mapping)) {
                            fail(path, "nearly_nonexpansive needs a schedule a_n");
                        }
                        break;
                    case CertifyClass::asymptotically_nonexpansive:
                        if (!c.schedule && !meta.k_schedule) {
                            fail(path, "asymptotically_nonexpansive needs a schedule k_n");
                        }
                        break;
                    case CertifyClass::uniformly_lipschitz:
                        if (!c.lipschitz && !meta.lipschitz_L) {
                            fail(path, "uniformly_lipschitz needs a lipschitz constant");
                        }
                        break;
                    case CertifyClass::nonexpansive:
                        break;
                }
                break;
            }
        }
    }

    RunConfig config{.scheme = s.scheme,
                     .mapping = std::move(mapping),
                     .alpha = s.alpha,
                     .beta = s.beta,
                     .x0 = x0,
                     .max_steps = s.max_steps,
                     .stop_tolerance = s.stop_tolerance};
    return PreparedScenario{s, std::move(config)};
}

}  // namespace fixpt
