#pragma once

// Mutation fuzzer for scenario documents, shared by the property tests and the
// acceptance binary.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixpt/cli.hpp"
#include "fixpt/errors.hpp"
#include "fixpt/random.hpp"
#include "fixpt/scenario.hpp"

namespace fuzz {

inline fixpt::json valid_scenario() {
    return fixpt::json::parse(R"({
        "schema_version": 1,
        "name": "fuzz",
        "space": {"dim": 1, "p": 2},
        "mapping": {"id": "example21", "parameters": {"q": 0.5}},
        "scheme": "modified_pm_hybrid",
        "schedules": {"alpha": {"kind": "constant", "value": 0.5}},
        "x0": [0.9],
        "max_steps": 50,
        "stop_tolerance": 0,
        "checks": [{"kind": "theorem31"}, {"kind": "fejer"}]
    })");
}

struct Mutation {
    fixpt::json doc;
    std::string description;
};

/// One random mutation: a wrong value at a leaf, a removed key, or an unknown key.
inline Mutation mutate(const fixpt::json& valid, fixpt::Rng& rng) {
    using fixpt::json;
    std::vector<std::string> leaves;
    const json flat = valid.flatten();
    for (const auto& item : flat.items()) leaves.push_back(item.key());
    const std::vector<std::string> objects{"", "/space", "/mapping", "/mapping/parameters", "/schedules",
                                           "/schedules/alpha", "/checks/0"};
    const std::vector<json> wrong{json("text"), json(-3), json(1e9), json(nullptr), json::array(),
                                  json::object(), json(true), json(2.5)};
    auto pick = [&](const auto& v) -> const auto& { return v[rng.integer(0, v.size() - 1)]; };

    Mutation m{valid, ""};
    switch (rng.integer(0, 2)) {
        case 0: {
            const auto& ptr = pick(leaves);
            m.doc[json::json_pointer(ptr)] = pick(wrong);
            m.description = "replace " + ptr;
            break;
        }
        case 1: {
            const auto& ptr = pick(leaves);
            const json::json_pointer jp(ptr);
            auto& parent = m.doc[jp.parent_pointer()];
            if (parent.is_array()) {
                parent.erase(std::stoul(jp.back()));
            } else {
                parent.erase(jp.back());
            }
            m.description = "erase " + ptr;
            break;
        }
        default: {
            const auto& obj = pick(objects);
            m.doc[json::json_pointer(obj)]["bogus_key"] = 1;
            m.description = "unknown key under '" + obj + "'";
        }
    }
    return m;
}

inline bool is_invalid(const fixpt::json& doc) {
    try {
        fixpt::prepare_scenario(fixpt::scenario_from_json(doc));
    } catch (const fixpt::ConfigError&) {
        return true;
    }
    return false;
}

struct CaseResult {
    int exit_code = 0;
    std::string stderr_text;
    bool outputs_absent = true;
};

/// Writes `doc` under `dir` and runs it with outputs directed at dir/out.
inline CaseResult run_case(const fixpt::json& doc, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    const auto path = dir / "case.json";
    {
        std::ofstream(path) << doc.dump();
    }
    fixpt::CliOptions opts;
    opts.output_dir = dir / "out";
    opts.quiet = true;
    std::ostringstream out, err;
    CaseResult r;
    r.exit_code = fixpt::cmd_run(path, opts, out, err);
    r.stderr_text = err.str();
    r.outputs_absent = !fs::exists(opts.output_dir) || fs::is_empty(opts.output_dir);
    return r;
}

}  // namespace fuzz
