#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixpt/catalog.hpp"
#include "fixpt/cli.hpp"
#include "fixpt/errors.hpp"
#include "fixpt/random.hpp"
#include "scenario_fuzz.hpp"

using namespace fixpt;
namespace fs = std::filesystem;

namespace {

/// Small generator toolkit on top of the library RNG.
struct Gen {
    Rng rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double real(double lo, double hi) { return rng.uniform(lo, hi); }
    std::size_t index(std::size_t lo, std::size_t hi) { return static_cast<std::size_t>(rng.integer(lo, hi)); }
    bool coin() { return rng.uniform() < 0.5; }
    Vector vector(std::size_t d, double scale) {
        std::vector<double> c(d);
        for (auto& x : c) x = real(-scale, scale);
        return Vector(std::move(c));
    }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[index(0, v.size() - 1)];
    }
};

const std::vector<double> kExponents{1.0, 1.5, 2.0, 3.0, NormedSpace::kInfinity};

}  // namespace

TEST(Property, TriangleInequality) {
    Gen g(1);
    for (double p : kExponents) {
        const NormedSpace space(3, p);
        for (int i = 0; i < 10000; ++i) {
            const Vector u = g.vector(3, 100.0);
            const Vector v = g.vector(3, 100.0);
            ASSERT_LE(space.norm(u + v), space.norm(u) + space.norm(v) + 1e-12 * (space.norm(u) + space.norm(v)));
        }
    }
}

TEST(Property, Homogeneity) {
    Gen g(2);
    for (double p : kExponents) {
        const NormedSpace space(4, p);
        for (int i = 0; i < 2000; ++i) {
            const Vector v = g.vector(4, 10.0);
            const double lambda = g.real(-50.0, 50.0);
            const double lhs = space.norm(lambda * v);
            const double rhs = std::abs(lambda) * space.norm(v);
            ASSERT_NEAR(lhs, rhs, 1e-12 * rhs);
        }
    }
}

TEST(Property, ModulusMonotoneOnCommonPool) {
    Gen g(3);
    for (int trial = 0; trial < 30; ++trial) {
        const NormedSpace space(g.index(1, 4), g.pick(kExponents));
        const double e1 = g.real(0.0, 2.0);
        const double e2 = g.real(e1, 2.0);
        const std::uint64_t seed = g.index(0, 1000);
        const auto a = modulus_of_convexity_estimate(space, e1, 2000, seed);
        const auto b = modulus_of_convexity_estimate(space, e2, 2000, seed);
        ASSERT_LE(a.estimate, b.estimate + 1e-9) << e1 << " " << e2;
        ASSERT_GE(a.estimate, 0.0);
        ASSERT_LE(b.estimate, 1.0);
    }
}

TEST(Property, ModulusConvergesFromAbove) {
    const NormedSpace plane(2, 2.0);
    for (double eps : {0.5, 1.0, 1.5}) {
        const double exact = 1.0 - std::sqrt(1.0 - eps * eps / 4.0);
        double prev = 1.0;
        for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
            const double est = modulus_of_convexity_estimate(plane, eps, n, 0).estimate;
            ASSERT_GE(est, exact - 1e-12);
            // Same seed: a larger budget extends the pool, so the minimum cannot rise.
            ASSERT_LE(est, prev);
            prev = est;
        }
        EXPECT_LE(prev, exact + 1e-2);
    }
}

TEST(Property, Lemma21FlagsFirstViolation) {
    Gen g(4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t N = g.index(60, 300);
        std::vector<double> a(N), b(N), delta(N);
        a[0] = g.real(0.0, 5.0);
        for (std::size_t i = 0; i < N; ++i) {
            b[i] = g.coin() ? g.real(0.0, 1.0) * std::pow(0.5, static_cast<double>(i)) : 0.0;
            delta[i] = g.coin() ? g.real(0.0, 0.1) / static_cast<double>((i + 1) * (i + 1)) : 0.0;
        }
        // Satisfy the recurrence with slack, then break it at one index.
        for (std::size_t i = 0; i + 1 < N; ++i) {
            a[i + 1] = ((1.0 + delta[i]) * a[i] + b[i]) * g.real(0.0, 1.0);
        }
        const std::size_t n = g.index(1, N - 1);
        a[n] = (1.0 + delta[n - 1]) * a[n - 1] + b[n - 1] + g.real(1e-6, 1.0);
        // Later indices may violate too; the first one must be reported.
        const auto rep = check_lemma21(a, b, delta, N);
        ASSERT_FALSE(rep.recurrence_holds);
        ASSERT_EQ(rep.first_violation, n) << "trial " << trial;
    }
}

TEST(Property, Lemma21AcceptsValidRecurrences) {
    Gen g(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t N = g.index(60, 300);
        std::vector<double> a(N), b(N, 0.0), delta(N, 0.0);
        a[0] = g.real(0.0, 5.0);
        for (std::size_t i = 0; i + 1 < N; ++i) a[i + 1] = a[i] * g.real(0.5, 1.0);
        const auto rep = check_lemma21(a, b, delta, N);
        ASSERT_TRUE(rep.recurrence_holds);
        ASSERT_FALSE(rep.first_violation);
    }
}

TEST(Property, Theorem31OnCatalogWithSummableNearSequence) {
    Gen g(6);
    struct Case {
        Mapping m;
        Vector x0;
    };
    for (int trial = 0; trial < 12; ++trial) {
        const double q = g.real(0.1, 0.9);
        const double p = g.pick(std::vector<double>{1.5, 2.0, 3.0});
        std::vector<Case> cases;
        cases.push_back({make_example21(q), Vector{g.real(0.0, 1.0)}});
        cases.push_back({make_linear_contraction(q, 2, p), normalize_into_unit_ball(NormedSpace(2, p), g.vector(2, 1.0))});
        cases.push_back({make_asymptotically_nonexpansive_example(2, p), Vector{g.real(0.0, 1.0), g.real(0.0, 4.0)}});
        for (auto& c : cases) {
            ASSERT_TRUE(effective_near_sequence(c.m)->summable());
            const auto traj = run_scheme(RunConfig{.scheme = Scheme::modified_pm_hybrid,
                                                   .mapping = c.m,
                                                   .alpha = Schedule::constant(g.real(0.1, 0.9)),
                                                   .beta = std::nullopt,
                                                   .x0 = c.x0,
                                                   .max_steps = 200,
                                                   .stop_tolerance = 0.0});
            const auto rep = verify_theorem31(traj, c.m);
            for (const auto& l : rep.distance_limits) ASSERT_LE(l.tail_oscillation, kLimitTolerance);
            ASSERT_LE(rep.residual_Tn_tail_max, kRegularityTolerance) << c.m.name();
            ASSERT_TRUE(verify_fejer_bound(traj, c.m).passed) << c.m.name();
        }
    }
}

TEST(Property, ConditionIChainBound) {
    Gen g(7);
    for (int trial = 0; trial < 10; ++trial) {
        const double q = g.real(0.1, 0.9);
        const auto m = make_example21(q);
        const double lambda = (1.0 - q) * g.real(0.5, 1.0);
        const auto cert = certify_condition_I(m, Phi::linear(lambda), 2000, trial);
        ASSERT_EQ(cert.verdict, Verdict::certified);
        const auto traj = run_scheme(RunConfig{.scheme = g.coin() ? Scheme::mann : Scheme::modified_pm_hybrid,
                                               .mapping = m,
                                               .alpha = Schedule::constant(g.real(0.1, 0.9)),
                                               .beta = std::nullopt,
                                               .x0 = Vector{g.real(0.0, 1.0)},
                                               .max_steps = 100,
                                               .stop_tolerance = 0.0});
        for (std::size_t k = 0; k < traj.iterates.size(); ++k) {
            const double d = *traj.records[k].dist_to_known_fp;
            ASSERT_LE(d, traj.records[k].residual_T / lambda + kCertTolerance / lambda);
        }
    }
}

TEST(Property, RateDominanceOnLinearMaps) {
    for (double q : {0.3, 0.5, 0.9}) {
        for (double alpha : {0.25, 0.5, 0.75}) {
            RunConfig base{.scheme = Scheme::picard,
                           .mapping = make_linear_contraction(q, 1),
                           .alpha = Schedule::constant(alpha),
                           .beta = std::nullopt,
                           .x0 = Vector{1.0},
                           .max_steps = 2000,
                           .stop_tolerance = 0.0};
            const std::vector<Scheme> s{Scheme::pm_hybrid, Scheme::picard, Scheme::mann,
                                        Scheme::modified_pm_hybrid};
            const auto rep = compare_schemes(base, s, 1e-6);
            for (const auto& row : rep.rows) ASSERT_TRUE(row.steps_to_target) << to_string(row.scheme);
            EXPECT_LE(*rep.rows[0].steps_to_target, *rep.rows[1].steps_to_target);
            EXPECT_LE(*rep.rows[1].steps_to_target, *rep.rows[2].steps_to_target);
            EXPECT_LE(*rep.rows[3].steps_to_target, *rep.rows[0].steps_to_target);
        }
    }
}

TEST(Property, PowerConsistencyAcrossCatalog) {
    Gen g(8);
    for (const auto& id : catalog_ids()) {
        CatalogParams params;
        if (id == "example21" || id == "contraction") params["q"] = g.real(0.1, 0.9);
        const auto m = make_catalog_mapping(id, params, NormedSpace(1, 2.0));
        Rng rng(9);
        for (int i = 0; i < 100; ++i) {
            const Vector x = sample_domain(m.domain(), m.space(), rng);
            const std::size_t n = g.index(0, 20);
            Vector y = x;
            for (std::size_t k = 0; k < n; ++k) y = m.apply(y);
            ASSERT_LE(m.space().distance(m.apply_power(n, x), y), 1e-10) << id;
        }
    }
}

TEST(Property, ScenarioRoundTrip) {
    Gen g(10);
    const std::vector<std::string> kinds{"constant", "harmonic_tail", "geometric", "table", "formula"};
    for (int trial = 0; trial < 200; ++trial) {
        Scenario s;
        s.name = "s" + std::to_string(trial);
        s.space = {g.index(1, 4), g.pick(kExponents)};
        s.mapping = {"contraction", {{"q", g.real(0.01, 0.99)}}};
        s.scheme = g.pick(all_schemes());
        auto schedule = [&]() {
            const auto& k = g.pick(kinds);
            if (k == "constant") return Schedule::constant(g.real(0, 1));
            if (k == "harmonic_tail") return Schedule::harmonic_tail(g.real(0, 2), g.real(0, 3));
            if (k == "geometric") return Schedule::geometric(g.real(0, 1), g.real(0, 2));
            if (k == "table") return Schedule::table({g.real(0, 1), g.real(0, 1)}, g.real(0, 1));
            return Schedule::formula(g.real(0, 1), g.real(0, 1), g.real(0, 1), g.real(0, 3), g.real(0, 2));
        };
        s.alpha = schedule();
        if (g.coin()) s.beta = schedule();
        s.x0.assign(s.space.dim, g.real(-0.1, 0.1));
        s.max_steps = g.index(1, 5000);
        s.stop_tolerance = g.real(0.0, 1e-6);
        if (g.coin()) s.checks.push_back(CheckSpec{.kind = CheckKind::theorem32});
        if (g.coin()) {
            s.checks.push_back(CheckSpec{.kind = CheckKind::condition_I,
                                         .phi = Phi::power(g.real(0.1, 2), g.real(1, 3)),
                                         .samples = g.index(1, 100)});
        }
        if (g.coin()) {
            s.checks.push_back(CheckSpec{.kind = CheckKind::certify,
                                         .certify_class = CertifyClass::uniformly_lipschitz,
                                         .lipschitz = g.real(0.5, 2.0),
                                         .n_max = g.index(1, 10)});
        }
        const auto text = scenario_to_json(s).dump();
        ASSERT_EQ(parse_scenario(text), s) << text;
    }
}

TEST(Property, InvalidScenariosExitOneWithoutOutputs) {
    const fs::path dir = fs::temp_directory_path() / "fixpt_property_fuzz";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const json valid = fuzz::valid_scenario();
    Rng rng(11);
    int cases = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto m = fuzz::mutate(valid, rng);
        // Some mutations leave a valid scenario (e.g. dropping an optional key).
        if (!fuzz::is_invalid(m.doc)) continue;
        ++cases;
        const auto r = fuzz::run_case(m.doc, dir);
        ASSERT_EQ(r.exit_code, kExitConfig) << m.description;
        ASSERT_EQ(r.stderr_text.rfind("error: $", 0), 0u) << m.description << ": " << r.stderr_text;
        ASSERT_TRUE(r.outputs_absent) << m.description;
    }
    EXPECT_GT(cases, 200);
    fs::remove_all(dir);
}
