#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "fruits/data.hpp"
#include "fruits/error.hpp"
#include "fruits/prepare.hpp"
#include "test_support.hpp"

using namespace fruits;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> values(const TimeSeries& x, std::size_t dim = 0) {
    auto r = x.row(dim);
    return {r.begin(), r.end()};
}
}  // namespace

TEST(NanFill, Examples) {
    EXPECT_EQ(values(nan_fill({1, kNaN, 3})), (std::vector<double>{1, 1, 3}));
    EXPECT_EQ(values(nan_fill({kNaN, kNaN, 2})), (std::vector<double>{0, 0, 2}));
    TimeSeries clean{4, -1, 2};
    EXPECT_EQ(nan_fill(clean), clean);
    EXPECT_FALSE(nan_fill({kNaN, kNaN}).has_nan());
}

TEST(NanFill, PerDimension) {
    auto x = TimeSeries::from_rows({{kNaN, 2, kNaN}, {5, kNaN, kNaN}});
    auto y = nan_fill(x);
    EXPECT_EQ(values(y, 0), (std::vector<double>{0, 2, 2}));
    EXPECT_EQ(values(y, 1), (std::vector<double>{5, 5, 5}));
}

TEST(Standardize, Examples) {
    auto y = values(standardize({1, 2, 3}));
    EXPECT_NEAR(y[0], -std::sqrt(1.5), 1e-12);
    EXPECT_NEAR(y[1], 0.0, 1e-12);
    EXPECT_NEAR(y[2], std::sqrt(1.5), 1e-12);
    EXPECT_EQ(values(standardize({4, 4, 4})), (std::vector<double>{0, 0, 0}));
}

TEST(Standardize, Idempotent) {
    std::mt19937_64 rng(61);
    for (int c = 0; c < 50; ++c) {
        auto x = test::random_series(rng, 2, 40, -5, 5);
        auto once = standardize(x), twice = standardize(once);
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t t = 0; t < 40; ++t) EXPECT_NEAR(twice(j, t), once(j, t), 1e-10);
    }
}

TEST(Increments, Examples) {
    EXPECT_EQ(values(increments({1, 2, 4})), (std::vector<double>{0, 1, 2}));
    EXPECT_EQ(values(increments({3, 3, 3})), (std::vector<double>{0, 0, 0}));
    EXPECT_EQ(values(increments(increments({1, 2, 4}))), (std::vector<double>{0, 1, 1}));
    EXPECT_TRUE(increments(TimeSeries(1, 0)).empty());
}

TEST(IncLift, Examples) {
    auto y = inc_lift({1, 2, 4});
    ASSERT_EQ(y.dims(), 2u);
    EXPECT_EQ(values(y, 0), (std::vector<double>{1, 2, 4}));
    EXPECT_EQ(values(y, 1), (std::vector<double>{0, 1, 2}));
    auto c = inc_lift({7, 7, 7});
    EXPECT_EQ(values(c, 1), (std::vector<double>{0, 0, 0}));
    auto single = inc_lift({5});
    EXPECT_EQ(values(single, 0), (std::vector<double>{5}));
    EXPECT_EQ(values(single, 1), (std::vector<double>{0}));
}

TEST(IncLift, RejectsMultivariate) {
    try {
        inc_lift(TimeSeries(2, 3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotUnivariate);
    }
    EXPECT_THROW(output_dims({PrepStep::IncLift}, 2), Error);
}

TEST(Chain, OrderAndIdentity) {
    TimeSeries x{1, 2, 4, 8};
    EXPECT_EQ(apply_chain({}, x), x);
    auto a = apply_chain({PrepStep::IncLift, PrepStep::Std}, x);
    auto b = apply_chain({PrepStep::Std, PrepStep::IncLift}, x);
    EXPECT_EQ(a.dims(), 2u);
    EXPECT_NE(a, b);
    EXPECT_EQ(apply_chain({PrepStep::Inc, PrepStep::Inc}, x), increments(increments(x)));
    EXPECT_EQ(output_dims({PrepStep::IncLift, PrepStep::Std}, 1), 2u);
    EXPECT_EQ(output_dims({PrepStep::Inc}, 3), 3u);
}

TEST(Chain, Names) {
    for (auto s : {PrepStep::NanFill, PrepStep::Std, PrepStep::Inc, PrepStep::IncLift})
        EXPECT_EQ(prep_step_from_string(to_string(s)), s);
    EXPECT_THROW(prep_step_from_string("diff"), Error);
}

// inc of a stuttered series is inc of the original with zeros inserted
// right after each duplicated step.
TEST(PrepareProperty, StutterCommutesWithIncrements) {
    std::mt19937_64 rng(62);
    for (int c = 0; c < 100; ++c) {
        auto x = test::random_series(rng, 1, 20);
        auto y = stutter(x, 0.3 + 0.1 * (c % 5), static_cast<std::uint64_t>(c));
        auto dx = values(increments(x)), dy = values(increments(y));
        std::vector<double> nonzero;
        for (double v : dy)
            if (v != 0.0) nonzero.push_back(v);
        std::vector<double> want;
        for (double v : dx)
            if (v != 0.0) want.push_back(v);
        EXPECT_EQ(nonzero, want);
        EXPECT_EQ(dy.size() - dx.size(), y.length() - x.length());
    }
}
