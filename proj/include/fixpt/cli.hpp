#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fixpt/scenario.hpp"

namespace fixpt {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitFailed = 2;
inline constexpr int kExitInconclusive = 3;

struct CliOptions {
    std::uint64_t seed = 0;
    bool force = false;
    std::filesystem::path output_dir = ".";
    bool quiet = false;
};

/// Result of one scenario check as written to the report.
struct CheckOutcome {
    std::string name;
    /// "pass" or "fail".
    std::string verdict;
    json details;
};

/// Runs a prepared scenario and evaluates every listed check.
struct ScenarioResult {
    Trajectory trajectory;
    std::vector<CheckOutcome> checks;
    bool all_passed() const;
};
ScenarioResult execute_scenario(const PreparedScenario& prepared, std::uint64_t seed);

/// Dispatches to the certifier for `cls`. Missing schedule or constant falls
/// back to the mapping metadata; if that is absent too, throws ConfigError.
Certificate certify_mapping(const Mapping& m, CertifyClass cls, const std::optional<Schedule>& schedule,
                            std::optional<double> lipschitz, std::size_t n_max, std::size_t samples,
                            std::uint64_t seed);

/// Writes <name>.trajectory.csv, <name>.trajectory.json and <name>.report.json.
/// Exit 0 when every check passes, 2 when one fails, 1 on configuration errors
/// (nothing is written in that case).
int cmd_run(const std::filesystem::path& scenario_path, const CliOptions& opts, std::ostream& out,
            std::ostream& err);

/// Writes <name>.rates.csv and <name>.rates.json.
int cmd_compare(const std::filesystem::path& scenario_path, const std::vector<std::string>& schemes,
                double target_error, const CliOptions& opts, std::ostream& out, std::ostream& err);

struct CertifyRequest {
    std::string mapping_id;
    CatalogParams parameters;
    std::size_t dim = 1;
    double p = 2.0;
    std::string class_name;
    std::optional<Schedule> schedule;
    std::optional<double> lipschitz;
    std::size_t n_max = kDefaultCertifyNMax;
    std::size_t samples = kDefaultSamples;
};

/// Prints the certificate JSON. Exit 0 certified, 2 refuted, 3 inconclusive.
int cmd_certify(const CertifyRequest& req, const CliOptions& opts, std::ostream& out,
                std::ostream& err);

/// Prints the modulus estimate JSON.
int cmd_modulus(double p, std::size_t dim, double epsilon, std::size_t samples,
                const CliOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace fixpt
