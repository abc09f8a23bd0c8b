#include "fixpt/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "fixpt/errors.hpp"

namespace fixpt {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PreparedScenario load(const fs::path& path) { return prepare_scenario(parse_scenario(read_file(path))); }

/// Output file set written all-or-nothing: every target is checked before
/// anything is written, and each file goes through a temporary and a rename.
class OutputSet {
public:
    OutputSet(fs::path dir, bool force) : dir_(std::move(dir)), force_(force) {}

    void add(const std::string& file_name, std::string content) {
        files_.emplace_back(dir_ / file_name, std::move(content));
    }

    void commit() const {
        if (!force_) {
            for (const auto& [path, content] : files_) {
                if (fs::exists(path)) {
                    throw ConfigError(path.string() + ": exists (use --force to overwrite)");
                }
            }
        }
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw ConfigError(dir_.string() + ": cannot create output directory");
        std::vector<fs::path> temps;
        try {
            for (const auto& [path, content] : files_) {
                fs::path tmp = path;
                tmp += ".tmp";
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                temps.push_back(tmp);
                if (!(out << content) || !out.flush()) throw ConfigError(tmp.string() + ": write failed");
            }
        } catch (...) {
            for (const auto& t : temps) fs::remove(t, ec);
            throw;
        }
        for (std::size_t i = 0; i < files_.size(); ++i) fs::rename(temps[i], files_[i].first);
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& f : files_) out.push_back(f.first.string());
        return out;
    }

private:
    fs::path dir_;
    bool force_;
    std::vector<std::pair<fs::path, std::string>> files_;
};

const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

/// ||x_n - p|| for the first known fixed point, with b_n = (1 + alpha_n) a_n.
CheckOutcome lemma21_check(const Trajectory& traj, const Mapping& m) {
    const auto& fps = *m.meta().known_fixed_points;
    const Schedule a_n = *effective_near_sequence(m);
    const std::size_t N = traj.iterates.size();
    json per_point = json::array();
    bool ok = true;
    for (const auto& p : fps) {
        std::vector<double> a(N), b(N), delta(N, 0.0);
        for (std::size_t i = 0; i < N; ++i) {
            const std::size_t n = i + 1;
            a[i] = m.space().distance(traj.iterates[i], p);
            b[i] = (1.0 + traj.alpha.at(n)) * a_n.at(n);
        }
        const Lemma21Report rep = check_lemma21(a, b, delta, N);
        const bool pass = rep.recurrence_holds && rep.hypotheses_hold &&
                          rep.limit.kind == LimitVerdict::Kind::converged;
        ok = ok && pass;
        json j = as_json(rep);
        j["fixed_point"] = as_json(p);
        per_point.push_back(j);
    }
    return {"lemma21", pass_fail(ok), json{{"per_fixed_point", per_point}}};
}

CheckOutcome evaluate_check(const CheckSpec& c, const Trajectory& traj, const Mapping& m,
                            std::uint64_t seed) {
    const std::string name(to_string(c.kind));
    switch (c.kind) {
        case CheckKind::lemma21:
            return lemma21_check(traj, m);
        case CheckKind::fejer: {
            const auto rep = verify_fejer_bound(traj, m);
            return {name, pass_fail(rep.passed), as_json(rep)};
        }
        case CheckKind::theorem31: {
            const auto rep = verify_theorem31(traj, m);
            return {name, pass_fail(rep.passed), as_json(rep)};
        }
        case CheckKind::theorem32: {
            const auto rep = verify_theorem32(traj, m);
            return {name, pass_fail(rep.passed), as_json(rep)};
        }
        case CheckKind::condition_I: {
            const auto cert = certify_condition_I(m, *c.phi, c.samples, seed);
            return {name, pass_fail(cert.verdict == Verdict::certified),
                    json{{"phi", as_json(*c.phi)}, {"certificate", as_json(cert)}}};
        }
        case CheckKind::theorem33: {
            const auto witness = make_condition_I_witness(m, *c.phi, c.samples, seed);
            json details{{"phi", as_json(*c.phi)}, {"certificate", as_json(*witness.certificate)}};
            if (witness.certificate->verdict != Verdict::certified) {
                details["reason"] = "condition (I) witness not certified";
                return {name, "fail", details};
            }
            const auto rep = verify_theorem33(traj, m, witness);
            details["report"] = as_json(rep);
            return {name, pass_fail(rep.passed), details};
        }
        case CheckKind::certify: {
            const auto cert =
                certify_mapping(m, *c.certify_class, c.schedule, c.lipschitz, c.n_max, c.samples, seed);
            return {name + ":" + std::string(to_string(*c.certify_class)),
                    pass_fail(cert.verdict == Verdict::certified), as_json(cert)};
        }
    }
    throw ContractViolation("unknown check kind");
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    return out.str();
}

int report_error(std::ostream& err, const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
}

}  // namespace

bool ScenarioResult::all_passed() const {
    for (const auto& c : checks) {
        if (c.verdict != "pass") return false;
    }
    return true;
}

ScenarioResult execute_scenario(const PreparedScenario& prepared, std::uint64_t seed) {
    ScenarioResult result;
    result.trajectory = run_scheme(prepared.config);
    for (const auto& c : prepared.scenario.checks) {
        result.checks.push_back(evaluate_check(c, result.trajectory, prepared.config.mapping, seed));
    }
    return result;
}

Certificate certify_mapping(const Mapping& m, CertifyClass cls, const std::optional<Schedule>& schedule,
                            std::optional<double> lipschitz, std::size_t n_max, std::size_t samples,
                            std::uint64_t seed) {
    const auto& meta = m.meta();
    switch (cls) {
        case CertifyClass::nonexpansive:
            return certify_nonexpansive(m, samples, seed);
        case CertifyClass::nearly_nonexpansive: {
            auto a = schedule ? schedule : effective_near_sequence(m);
            if (!a) throw ConfigError("nearly_nonexpansive needs a schedule a_n");
            return certify_nearly_nonexpansive(m, *a, n_max, samples, seed);
        }
        case CertifyClass::asymptotically_nonexpansive: {
            auto k = schedule ? schedule : meta.k_schedule;
            if (!k) throw ConfigError("asymptotically_nonexpansive needs a schedule k_n");
            return certify_asymptotically_nonexpansive(m, *k, n_max, samples, seed);
        }
        case CertifyClass::uniformly_lipschitz: {
            auto L = lipschitz ? lipschitz : meta.lipschitz_L;
            if (!L) throw ConfigError("uniformly_lipschitz needs a lipschitz constant");
            return certify_uniform_lipschitz(m, *L, n_max, samples, seed);
        }
    }
    throw ContractViolation("unknown class");
}

int cmd_run(const fs::path& scenario_path, const CliOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const auto start = Clock::now();
        const PreparedScenario prepared = load(scenario_path);
        const auto& name = prepared.scenario.name;

        const auto run_start = Clock::now();
        const Trajectory traj = run_scheme(prepared.config);
        const double run_ms = millis_since(run_start);

        const auto check_start = Clock::now();
        json checks = json::array();
        bool all_passed = true;
        for (const auto& c : prepared.scenario.checks) {
            const CheckOutcome o = evaluate_check(c, traj, prepared.config.mapping, opts.seed);
            all_passed = all_passed && o.verdict == "pass";
            checks.push_back(json{{"name", o.name}, {"verdict", o.verdict}, {"details", o.details}});
        }
        const double check_ms = millis_since(check_start);

        const json scenario_json = scenario_to_json(prepared.scenario);
        json header = trajectory_header(traj, prepared.config.mapping);
        header["seed"] = opts.seed;
        header["scenario"] = scenario_json;
        const json report{{"scenario", scenario_json},
                          {"checks", checks},
                          {"timings", json{{"run_ms", run_ms},
                                           {"checks_ms", check_ms},
                                           {"total_ms", millis_since(start)}}}};

        OutputSet files(opts.output_dir, opts.force);
        files.add(name + ".trajectory.csv", trajectory_csv(traj));
        files.add(name + ".trajectory.json", header.dump(2) + "\n");
        files.add(name + ".report.json", report.dump(2) + "\n");
        files.commit();

        if (!opts.quiet) {
            out << name << ": " << to_string(traj.scheme) << ", " << traj.steps() << " steps, stop "
                << to_string(traj.stop_reason) << '\n';
            for (const auto& c : checks) {
                out << "  " << c["name"].get<std::string>() << ": " << c["verdict"].get<std::string>()
                    << '\n';
            }
            for (const auto& f : files.names()) out << "  wrote " << f << '\n';
        }
        return all_passed ? kExitOk : kExitFailed;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

int cmd_compare(const fs::path& scenario_path, const std::vector<std::string>& schemes,
                double target_error, const CliOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const PreparedScenario prepared = load(scenario_path);
        if (schemes.empty()) throw ConfigError("--schemes: at least one scheme is required");
        std::vector<Scheme> list;
        for (const auto& s : schemes) {
            try {
                list.push_back(scheme_from_string(s));
            } catch (const ParameterError& e) {
                throw ConfigError(std::string("--schemes: ") + e.what());
            }
        }
        for (Scheme s : list) {
            const auto beta = s == Scheme::ishikawa ? prepared.config.beta : std::nullopt;
            if (s == Scheme::ishikawa && !beta) {
                throw ConfigError("$.schedules.beta: ishikawa requires a beta schedule");
            }
            const auto verdict = validate_schedule(s, prepared.config.alpha, beta,
                                                   std::max<std::size_t>(1, prepared.config.max_steps));
            if (!verdict.ok()) {
                std::string msg = "$.schedules: " + std::string(to_string(s)) + " rejects the schedules";
                for (const auto& d : verdict.diagnostics) msg += "; " + d;
                throw ConfigError(msg);
            }
        }
        const RateReport rep = compare_schemes(prepared.config, list, target_error);

        std::ostringstream csv;
        write_rate_csv(csv, rep);
        json j = as_json(rep);
        j["scenario"] = scenario_to_json(prepared.scenario);

        OutputSet files(opts.output_dir, opts.force);
        files.add(prepared.scenario.name + ".rates.csv", csv.str());
        files.add(prepared.scenario.name + ".rates.json", j.dump(2) + "\n");
        files.commit();

        if (!opts.quiet) {
            out << to_text(rep);
            for (const auto& f : files.names()) out << "wrote " << f << '\n';
        }
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

int cmd_certify(const CertifyRequest& req, const CliOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const CertifyClass cls = certify_class_from_string(req.class_name);
        const NormedSpace space(req.dim, req.p);
        const Mapping m = make_catalog_mapping(req.mapping_id, req.parameters, space);
        const Certificate cert =
            certify_mapping(m, cls, req.schedule, req.lipschitz, req.n_max, req.samples, opts.seed);
        out << as_json(cert).dump(2) << '\n';
        switch (cert.verdict) {
            case Verdict::certified: return kExitOk;
            case Verdict::refuted: return kExitFailed;
            case Verdict::inconclusive: return kExitInconclusive;
        }
        return kExitInconclusive;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

int cmd_modulus(double p, std::size_t dim, double epsilon, std::size_t samples, const CliOptions& opts,
                std::ostream& out, std::ostream& err) {
    try {
        const NormedSpace space(dim, p);
        const ModulusEstimate est = modulus_of_convexity_estimate(space, epsilon, samples, opts.seed);
        out << as_json(est).dump(2) << '\n';
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

}  // namespace fixpt
