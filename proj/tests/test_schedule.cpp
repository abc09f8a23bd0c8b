#include <gtest/gtest.h>

#include <cmath>

#include "fixpt/errors.hpp"
#include "fixpt/schedule.hpp"

using namespace fixpt;

TEST(Schedule, Constant) {
    const auto s = Schedule::constant(0.5);
    EXPECT_EQ(s.at(1), 0.5);
    EXPECT_EQ(s.at(1000), 0.5);
    EXPECT_EQ(s.limit(), 0.5);
    EXPECT_FALSE(s.summable());
    EXPECT_TRUE(Schedule::constant(0.0).summable());
}

TEST(Schedule, Geometric) {
    const auto s = Schedule::geometric(0.5);
    EXPECT_EQ(s.at(1), 0.5);
    EXPECT_EQ(s.at(3), 0.125);
    EXPECT_EQ(s.limit(), 0.0);
    EXPECT_TRUE(s.summable());
    EXPECT_EQ(Schedule::geometric(0.5, 4.0).at(2), 1.0);
}

TEST(Schedule, HarmonicTail) {
    const auto s = Schedule::harmonic_tail(1.0, 1.0);
    EXPECT_EQ(s.at(1), 0.5);
    EXPECT_EQ(s.at(3), 0.25);
    EXPECT_EQ(s.limit(), 0.0);
    EXPECT_FALSE(s.summable());
}

TEST(Schedule, Table) {
    const auto s = Schedule::table({0.1, 0.2, 0.3}, 0.05);
    EXPECT_EQ(s.at(1), 0.1);
    EXPECT_EQ(s.at(3), 0.3);
    EXPECT_EQ(s.at(4), 0.05);
    EXPECT_EQ(s.limit(), 0.05);
    EXPECT_TRUE(Schedule::table({1.0, 2.0}, 0.0).summable());
}

TEST(Schedule, Formula) {
    // 1 + 1/n^2
    const auto s = Schedule::formula(1.0, 1.0, 1.0, 2.0);
    EXPECT_EQ(s.at(1), 2.0);
    EXPECT_EQ(s.at(2), 1.25);
    EXPECT_EQ(s.limit(), 1.0);
    EXPECT_FALSE(s.summable());
    EXPECT_TRUE(Schedule::formula(0.0, 1.0, 1.0, 2.0).summable());
    EXPECT_FALSE(Schedule::formula(0.0, 1.0, 1.0, 1.0).summable());
    // 2^-n / n
    const auto g = Schedule::formula(0.0, 1.0, 0.5, 1.0);
    EXPECT_DOUBLE_EQ(g.at(2), 0.125);
    EXPECT_TRUE(g.summable());
}

TEST(Schedule, IndexZeroIsRejected) {
    EXPECT_THROW(Schedule::constant(0.5).at(0), ContractViolation);
}

TEST(Schedule, InvalidParameters) {
    EXPECT_THROW(Schedule::constant(std::nan("")), ParameterError);
    EXPECT_THROW(Schedule::harmonic_tail(1.0, -1.0), ParameterError);
    EXPECT_THROW(Schedule::formula(0.0, 1.0, -0.5, 1.0), ParameterError);
}

TEST(Schedule, BoundsFoldInTheLimit) {
    // 1/(n+1) is never 0 on a finite horizon but its infimum is.
    const auto [lo, hi] = Schedule::harmonic_tail(1.0, 1.0).bounds(100);
    EXPECT_EQ(lo, 0.0);
    EXPECT_EQ(hi, 0.5);
    const auto [clo, chi] = Schedule::constant(0.3).bounds(10);
    EXPECT_EQ(clo, 0.3);
    EXPECT_EQ(chi, 0.3);
}

TEST(Schedule, EqualityAndDescribe) {
    EXPECT_EQ(Schedule::geometric(0.5), Schedule::geometric(0.5));
    EXPECT_NE(Schedule::geometric(0.5), Schedule::geometric(0.25));
    EXPECT_NE(Schedule::constant(0.5), Schedule::table({0.5}, 0.5));
    EXPECT_FALSE(Schedule::geometric(0.5).describe().empty());
    EXPECT_EQ(Schedule::table({}, 0.0).kind_name(), "table");
}
