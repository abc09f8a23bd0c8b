#include <gtest/gtest.h>

#include <cmath>

#include "fixpt/catalog.hpp"
#include "fixpt/errors.hpp"
#include "fixpt/schemes.hpp"
#include "oracles.hpp"

using namespace fixpt;

namespace {

RunConfig config(Scheme scheme, Mapping m, Vector x0, double alpha = 0.5, std::size_t steps = 20) {
    return RunConfig{.scheme = scheme,
                     .mapping = std::move(m),
                     .alpha = Schedule::constant(alpha),
                     .beta = std::nullopt,
                     .x0 = std::move(x0),
                     .max_steps = steps,
                     .stop_tolerance = 0.0};
}

oracle::Kind oracle_kind(Scheme s) {
    switch (s) {
        case Scheme::picard: return oracle::Kind::picard;
        case Scheme::mann: return oracle::Kind::mann;
        case Scheme::ishikawa: return oracle::Kind::ishikawa;
        case Scheme::modified_mann: return oracle::Kind::modified_mann;
        case Scheme::pm_hybrid: return oracle::Kind::pm_hybrid;
        case Scheme::modified_pm_hybrid: return oracle::Kind::modified_pm_hybrid;
    }
    return oracle::Kind::picard;
}

}  // namespace

TEST(Scheme, Names) {
    for (Scheme s : all_schemes()) EXPECT_EQ(scheme_from_string(to_string(s)), s);
    EXPECT_THROW(scheme_from_string("newton"), ParameterError);
    EXPECT_EQ(all_schemes().size(), 6u);
}

TEST(RunScheme, PicardHalving) {
    const auto traj = run_scheme(config(Scheme::picard, make_linear_contraction(0.5, 1), {1.0}, 0.5, 3));
    ASSERT_EQ(traj.iterates.size(), 4u);
    EXPECT_EQ(traj.iterates[1], Vector{0.5});
    EXPECT_EQ(traj.iterates[2], Vector{0.25});
    EXPECT_EQ(traj.iterates[3], Vector{0.125});
    EXPECT_EQ(traj.stop_reason, StopReason::max_steps);
}

TEST(RunScheme, PmHybridHalving) {
    const auto traj = run_scheme(config(Scheme::pm_hybrid, make_linear_contraction(0.5, 1), {1.0}, 0.5, 1));
    // y = 0.75, x_next = T y = 0.375.
    EXPECT_EQ(traj.iterates[1], Vector{0.375});
}

TEST(RunScheme, MannHalving) {
    const auto traj = run_scheme(config(Scheme::mann, make_linear_contraction(0.5, 1), {1.0}, 0.5, 1));
    EXPECT_EQ(traj.iterates[1], Vector{0.75});
}

TEST(RunScheme, ModifiedPmHybridOnExample21) {
    const auto traj = run_scheme(config(Scheme::modified_pm_hybrid, make_example21(0.5), {0.9}, 0.5, 3));
    // y_1 = 0.5 * 0.9 + 0.5 * 0.45 = 0.675, x_2 = T(0.675) = 0.3375.
    EXPECT_EQ(traj.iterates[1], Vector{0.3375});
    // y_2 = 0.5 * 0.3375 + 0.5 * 0.084375, x_3 = T^2 y_2.
    EXPECT_EQ(traj.iterates[2], Vector{0.052734375});
}

TEST(RunScheme, AllSchemesMatchScalarOracle) {
    for (double q : {0.3, 0.5, 0.9}) {
        const auto power = [q](std::size_t n, double x) { return oracle::example21_power(q, n, x); };
        for (Scheme s : all_schemes()) {
            for (double x0 : {0.1, 0.9, 1.0}) {
                auto cfg = config(s, make_example21(q), {x0}, 0.25, 30);
                if (s == Scheme::ishikawa) cfg.beta = Schedule::constant(0.6);
                const auto traj = run_scheme(cfg);
                const auto expect = oracle::scalar_run(oracle_kind(s), power, 0.25, 0.6, x0, 30);
                ASSERT_EQ(traj.iterates.size(), expect.size());
                for (std::size_t k = 0; k < expect.size(); ++k) {
                    EXPECT_NEAR(traj.iterates[k][0], expect[k], 1e-15 + 1e-12 * std::abs(expect[k]))
                        << to_string(s) << " q=" << q << " x0=" << x0 << " k=" << k;
                }
            }
        }
    }
}

TEST(RunScheme, LinearRateOracleAgreement) {
    const Scheme covered[] = {Scheme::picard, Scheme::mann, Scheme::pm_hybrid, Scheme::modified_pm_hybrid};
    for (double q : {0.3, 0.5, 0.9}) {
        for (double alpha : {0.25, 0.5, 0.75}) {
            for (Scheme s : covered) {
                const auto traj = run_scheme(config(s, make_linear_contraction(q, 1), {1.0}, alpha, 20));
                double x = 1.0;
                for (std::size_t n = 1; n <= 20; ++n) {
                    x *= linear_rate_oracle(s, q, alpha, n);
                    const double got = traj.iterates[n][0];
                    EXPECT_LE(std::abs(got - x), 1e-10 * std::abs(x)) << to_string(s) << " n=" << n;
                }
            }
        }
    }
}

TEST(LinearRateOracle, Examples) {
    EXPECT_EQ(linear_rate_oracle(Scheme::picard, 0.5, 0.5, 1), 0.5);
    EXPECT_EQ(linear_rate_oracle(Scheme::mann, 0.5, 0.5, 1), 0.75);
    EXPECT_EQ(linear_rate_oracle(Scheme::pm_hybrid, 0.5, 0.5, 1), 0.375);
    EXPECT_EQ(linear_rate_oracle(Scheme::modified_pm_hybrid, 0.5, 0.5, 2), 0.15625);
    EXPECT_THROW(linear_rate_oracle(Scheme::ishikawa, 0.5, 0.5, 1), ParameterError);
    EXPECT_THROW(linear_rate_oracle(Scheme::modified_mann, 0.5, 0.5, 1), ParameterError);
}

TEST(RunScheme, ToleranceStop) {
    auto cfg = config(Scheme::picard, make_linear_contraction(0.5, 1), {1.0}, 0.5, 1000);
    cfg.stop_tolerance = 1e-3;
    const auto traj = run_scheme(cfg);
    EXPECT_EQ(traj.stop_reason, StopReason::tolerance);
    // Steps halve: 0.5, 0.25, ..., 2^-k <= 1e-3 first at k = 10.
    EXPECT_EQ(traj.steps(), 10u);
    EXPECT_LE(traj.records.back().step_norm, 1e-3);
}

TEST(RunScheme, RecordsAreConsistent) {
    const auto m = make_example21(0.5);
    const auto traj = run_scheme(config(Scheme::modified_pm_hybrid, m, {0.9}, 0.5, 10));
    ASSERT_EQ(traj.records.size(), traj.iterates.size());
    EXPECT_EQ(traj.records[0].step_norm, 0.0);
    EXPECT_EQ(traj.records[0].applications, 0u);
    for (std::size_t k = 0; k < traj.iterates.size(); ++k) {
        const double x = traj.iterates[k][0];
        const auto& r = traj.records[k];
        EXPECT_DOUBLE_EQ(r.residual_T, std::abs(x - oracle::example21(0.5, x)));
        EXPECT_DOUBLE_EQ(r.residual_Tn, std::abs(x - oracle::example21_power(0.5, k + 1, x)));
        ASSERT_TRUE(r.dist_to_known_fp);
        EXPECT_EQ(*r.dist_to_known_fp, std::abs(x));
        if (k > 0) EXPECT_DOUBLE_EQ(r.step_norm, std::abs(x - traj.iterates[k - 1][0]));
    }
}

TEST(RunScheme, ApplicationCounting) {
    // Closed-form powers cost one application.
    const auto closed = run_scheme(config(Scheme::modified_pm_hybrid, make_example21(0.5), {0.9}, 0.5, 5));
    EXPECT_EQ(closed.records.back().applications, 10u);
    const auto pm = run_scheme(config(Scheme::pm_hybrid, make_example21(0.5), {0.9}, 0.5, 5));
    EXPECT_EQ(pm.records.back().applications, 10u);
    const auto picard = run_scheme(config(Scheme::picard, make_example21(0.5), {0.9}, 0.5, 5));
    EXPECT_EQ(picard.records.back().applications, 5u);
    // Cosine has no closed form: step n costs 2n.
    const auto cosine = run_scheme(config(Scheme::modified_pm_hybrid, make_cosine(), {0.5}, 0.5, 4));
    EXPECT_EQ(cosine.records.back().applications, 2u * (1 + 2 + 3 + 4));
    const auto mm = run_scheme(config(Scheme::modified_mann, make_cosine(), {0.5}, 0.5, 4));
    EXPECT_EQ(mm.records.back().applications, 1u + 2 + 3 + 4);
}

TEST(RunScheme, ConfigErrors) {
    auto bad_alpha = config(Scheme::modified_pm_hybrid, make_example21(0.5), {0.9}, 1.5);
    EXPECT_THROW(run_scheme(bad_alpha), ConfigError);
    auto outside = config(Scheme::picard, make_example21(0.5), {1.5});
    EXPECT_THROW(run_scheme(outside), ConfigError);
    auto no_beta = config(Scheme::ishikawa, make_example21(0.5), {0.9});
    EXPECT_THROW(run_scheme(no_beta), ConfigError);
    auto stray_beta = config(Scheme::mann, make_example21(0.5), {0.9});
    stray_beta.beta = Schedule::constant(0.5);
    EXPECT_THROW(run_scheme(stray_beta), ConfigError);
    auto wrong_dim = config(Scheme::picard, make_example21(0.5), {0.5, 0.5});
    EXPECT_THROW(run_scheme(wrong_dim), Error);
}

TEST(RunScheme, DomainExitTruncates) {
    // Leaves [0, 1] only from the single point 0.3, which sampling never hits.
    const NormedSpace line(1, 2.0);
    Mapping trap("trap", line, Domain::cube(1, 0.0, 1.0),
                 [](const Vector& x) { return x[0] == 0.3 ? Vector{5.0} : 0.5 * x; }, std::nullopt, {});
    const auto traj = run_scheme(config(Scheme::picard, trap, {0.6}, 0.5, 10));
    EXPECT_EQ(traj.stop_reason, StopReason::domain_exit);
    ASSERT_EQ(traj.iterates.size(), 2u);
    EXPECT_EQ(traj.iterates.back(), Vector{0.3});
}

TEST(ValidateSchedule, Examples) {
    const auto harmonic = Schedule::harmonic_tail(1.0, 1.0);
    const auto mann = validate_schedule(Scheme::mann, harmonic, std::nullopt, 10000);
    EXPECT_EQ(mann.range, Tri::satisfied);
    EXPECT_EQ(mann.divergence, Tri::undetermined);
    EXPECT_TRUE(mann.ok());

    const auto mm = validate_schedule(Scheme::modified_mann, Schedule::constant(0.5), std::nullopt, 1000);
    EXPECT_EQ(mm.range, Tri::satisfied);
    EXPECT_EQ(mm.alpha_lower, 0.5);
    EXPECT_EQ(mm.alpha_upper, 0.5);

    EXPECT_EQ(validate_schedule(Scheme::modified_mann, harmonic, std::nullopt, 1000).range, Tri::violated);
}

TEST(ValidateSchedule, Ranges) {
    EXPECT_FALSE(validate_schedule(Scheme::mann, Schedule::constant(1.0), std::nullopt, 100).ok());
    EXPECT_TRUE(validate_schedule(Scheme::mann, Schedule::constant(0.0), std::nullopt, 100).range ==
                Tri::satisfied);
    EXPECT_EQ(validate_schedule(Scheme::mann, Schedule::constant(0.0), std::nullopt, 100).divergence,
              Tri::violated);
    EXPECT_EQ(validate_schedule(Scheme::mann, Schedule::geometric(0.5), std::nullopt, 1000).divergence,
              Tri::violated);
    EXPECT_EQ(validate_schedule(Scheme::mann, Schedule::constant(0.3), std::nullopt, 100).divergence,
              Tri::satisfied);
    EXPECT_TRUE(validate_schedule(Scheme::pm_hybrid, Schedule::constant(1.0), std::nullopt, 100).ok());
    EXPECT_FALSE(validate_schedule(Scheme::pm_hybrid, Schedule::constant(1.2), std::nullopt, 100).ok());
    EXPECT_FALSE(
        validate_schedule(Scheme::modified_pm_hybrid, Schedule::constant(1.0), std::nullopt, 100).ok());
    EXPECT_FALSE(
        validate_schedule(Scheme::modified_pm_hybrid, Schedule::constant(0.0), std::nullopt, 100).ok());
    EXPECT_TRUE(validate_schedule(Scheme::ishikawa, Schedule::constant(0.5), Schedule::constant(1.0), 100).ok());
    EXPECT_FALSE(validate_schedule(Scheme::ishikawa, Schedule::constant(0.5), Schedule::constant(1.5), 100).ok());
    EXPECT_FALSE(validate_schedule(Scheme::picard, Schedule::constant(0.5), Schedule::constant(0.5), 100).ok());
}

TEST(ValidateSchedule, ModifiedPmHybridNotesMissingUniformBounds) {
    const auto v = validate_schedule(Scheme::modified_pm_hybrid, Schedule::harmonic_tail(1.0, 1.0),
                                     std::nullopt, 1000);
    EXPECT_TRUE(v.ok());
    EXPECT_FALSE(v.diagnostics.empty());
}

TEST(SchemeProperties, PicardOnContractionShrinksByQ) {
    for (double q : {0.3, 0.5, 0.9}) {
        const auto m = make_linear_contraction(q, 3);
        const auto traj = run_scheme(config(Scheme::picard, m, {0.5, -0.4, 0.3}, 0.5, 60));
        for (std::size_t k = 0; k + 1 < traj.iterates.size(); ++k) {
            const double now = m.space().norm(traj.iterates[k]);
            const double next = m.space().norm(traj.iterates[k + 1]);
            EXPECT_LE(next, q * now + 1e-12);
        }
    }
}

TEST(SchemeProperties, IteratesStayInConvexDomain) {
    const auto m = make_asymptotically_nonexpansive_example(3, 2.0);
    for (Scheme s : all_schemes()) {
        auto cfg = config(s, m, {1.0, 4.0, 1.0}, 0.5, 60);
        if (s == Scheme::ishikawa) cfg.beta = Schedule::constant(0.5);
        const auto traj = run_scheme(cfg);
        EXPECT_NE(traj.stop_reason, StopReason::domain_exit);
        for (const auto& x : traj.iterates) EXPECT_TRUE(m.contains(x));
    }
}
