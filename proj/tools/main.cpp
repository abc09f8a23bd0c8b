#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fixpt/cli.hpp"
#include "fixpt/errors.hpp"

namespace {

double parse_exponent(const std::string& text) {
    if (text == "inf") return fixpt::NormedSpace::kInfinity;
    std::size_t used = 0;
    double p = 0.0;
    try {
        p = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size()) throw fixpt::ConfigError("--p: expected a number or \"inf\"");
    return p;
}

fixpt::json parse_json_flag(const std::string& flag, const std::string& text) {
    try {
        return fixpt::json::parse(text);
    } catch (const fixpt::json::parse_error& e) {
        throw fixpt::ConfigError(flag + ": malformed JSON: " + e.what());
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text) {
        if (c == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-point iteration experiments"};
    app.require_subcommand(1);

    fixpt::CliOptions opts;
    std::string output_dir = ".";
    app.add_option("--seed", opts.seed, "Seed for every sampler")->capture_default_str();
    app.add_flag("--force", opts.force, "Overwrite existing output files");
    app.add_option("--output", output_dir, "Output directory")->capture_default_str();
    app.add_flag("--quiet", opts.quiet, "Suppress progress text");

    std::string scenario_path;
    auto* run = app.add_subcommand("run", "Run a scenario and its checks");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();

    std::string compare_path;
    std::string schemes = "picard,mann,pm_hybrid,modified_pm_hybrid";
    double target = 1e-6;
    auto* compare = app.add_subcommand("compare", "Compare schemes on a scenario");
    compare->add_option("scenario", compare_path, "Scenario JSON file")->required();
    compare->add_option("--schemes", schemes, "Comma-separated scheme list")->capture_default_str();
    compare->add_option("--target", target, "Target distance to the fixed set")->capture_default_str();

    fixpt::CertifyRequest req;
    std::string params_text = "{}";
    std::string schedule_text;
    std::string p_text = "2";
    auto* certify = app.add_subcommand("certify", "Certify a catalog mapping against a class");
    certify->add_option("mapping", req.mapping_id, "Catalog id")->required();
    certify->add_option("--class", req.class_name, "Mapping class")->required();
    certify->add_option("--params", params_text, "Mapping parameters as a JSON object");
    certify->add_option("--schedule", schedule_text, "a_n or k_n as a JSON schedule object");
    certify->add_option("--lipschitz", req.lipschitz, "Lipschitz constant L");
    certify->add_option("--n-max", req.n_max, "Largest power checked")->capture_default_str();
    certify->add_option("--samples", req.samples, "Sample pairs")->capture_default_str();
    certify->add_option("--p", p_text, "Norm exponent (number or inf)")->capture_default_str();
    certify->add_option("--dim", req.dim, "Dimension")->capture_default_str();

    double epsilon = 1.0;
    std::size_t modulus_dim = 2;
    std::size_t modulus_samples = 100000;
    std::string modulus_p = "2";
    auto* modulus = app.add_subcommand("modulus", "Estimate the modulus of convexity");
    modulus->add_option("--epsilon", epsilon, "Distance epsilon in [0, 2]")->required();
    modulus->add_option("--p", modulus_p, "Norm exponent (number or inf)")->capture_default_str();
    modulus->add_option("--dim", modulus_dim, "Dimension")->capture_default_str();
    modulus->add_option("--samples", modulus_samples, "Sample pairs")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fixpt::kExitConfig;
    }
    opts.output_dir = output_dir;

    try {
        if (*run) return fixpt::cmd_run(scenario_path, opts, std::cout, std::cerr);
        if (*compare) return fixpt::cmd_compare(compare_path, split_list(schemes), target, opts, std::cout, std::cerr);
        if (*certify) {
            req.p = parse_exponent(p_text);
            req.parameters = fixpt::params_from_json(parse_json_flag("--params", params_text), "--params");
            if (!schedule_text.empty()) {
                req.schedule = fixpt::schedule_from_json(parse_json_flag("--schedule", schedule_text), "--schedule");
            }
            return fixpt::cmd_certify(req, opts, std::cout, std::cerr);
        }
        if (*modulus) {
            return fixpt::cmd_modulus(parse_exponent(modulus_p), modulus_dim, epsilon, modulus_samples, opts,
                                      std::cout, std::cerr);
        }
    } catch (const fixpt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return fixpt::kExitConfig;
    }
    return fixpt::kExitConfig;
}
