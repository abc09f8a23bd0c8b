#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixpt/analysis.hpp"
#include "fixpt/catalog.hpp"
#include "fixpt/report.hpp"
#include "fixpt/schemes.hpp"

namespace fixpt {

inline constexpr int kScenarioSchemaVersion = 1;

struct SpaceSpec {
    std::size_t dim = 1;
    double p = 2.0;
    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

struct MappingSpec {
    std::string id;
    CatalogParams parameters;
    friend bool operator==(const MappingSpec&, const MappingSpec&) = default;
};

enum class CheckKind { lemma21, fejer, theorem31, theorem32, theorem33, condition_I, certify };

std::string_view to_string(CheckKind k);

/// Certification classes accepted by the certify check and the certify command.
enum class CertifyClass { nonexpansive, asymptotically_nonexpansive, nearly_nonexpansive, uniformly_lipschitz };

std::string_view to_string(CertifyClass c);
/// Throws ParameterError for unknown names.
CertifyClass certify_class_from_string(std::string_view name);

inline constexpr std::size_t kDefaultCertifyNMax = 50;
inline constexpr std::size_t kDefaultSamples = 10000;

struct CheckSpec {
    CheckKind kind = CheckKind::theorem31;
    /// condition_I and theorem33.
    std::optional<Phi> phi;
    /// certify only.
    std::optional<CertifyClass> certify_class;
    /// a_n or k_n for certify; defaults to the mapping metadata.
    std::optional<Schedule> schedule;
    /// L for uniformly_lipschitz; defaults to the mapping metadata.
    std::optional<double> lipschitz;
    std::size_t n_max = kDefaultCertifyNMax;
    std::size_t samples = kDefaultSamples;

    friend bool operator==(const CheckSpec&, const CheckSpec&) = default;
};

struct Scenario {
    int schema_version = kScenarioSchemaVersion;
    std::string name;
    SpaceSpec space;
    MappingSpec mapping;
    Scheme scheme = Scheme::modified_pm_hybrid;
    Schedule alpha = Schedule::constant(0.5);
    std::optional<Schedule> beta;
    std::vector<double> x0;
    std::size_t max_steps = kDefaultMaxSteps;
    double stop_tolerance = kDefaultStopTolerance;
    std::vector<CheckSpec> checks;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Strict parse: unknown keys, wrong types and out-of-range values raise
/// ConfigError whose message starts with the JSON path ("$.schedules.alpha: ...").
Scenario parse_scenario(std::string_view text);
Scenario scenario_from_json(const json& doc);
json scenario_to_json(const Scenario& s);

/// Strict readers shared with the CLI.
Schedule schedule_from_json(const json& j, const std::string& path);
Phi phi_from_json(const json& j, const std::string& path);
CatalogParams params_from_json(const json& j, const std::string& path);

/// Scenario resolved against the catalog, with every precondition checked.
struct PreparedScenario {
    Scenario scenario;
    RunConfig config;
};

/// Builds the mapping and run configuration and checks that the schedules suit
/// the scheme and every listed check is applicable. Throws ConfigError.
PreparedScenario prepare_scenario(const Scenario& s);

}  // namespace fixpt
