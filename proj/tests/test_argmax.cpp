#include <random>

#include <gtest/gtest.h>

#include "fruits/argmax.hpp"
#include "fruits/error.hpp"
#include "fruits/iss.hpp"
#include "fruits/oracle.hpp"
#include "test_support.hpp"

using namespace fruits;
using Rows = std::vector<std::vector<std::size_t>>;

namespace {
const TimeSeries kTrace{1, 3, -4, 2, 0, 5, 1, 1};
}

TEST(Argmax, WorkedExampleValues) {
    Word w = parse_word("[1][1^(-1)][1]", 1);
    auto trace = arctic_iss_with_indices(kTrace, w);
    EXPECT_EQ(trace.values, (std::vector<double>{1, 3, 3, 9, 9, 12, 12, 12}));
    EXPECT_EQ(trace.values.back(),
              iss_brute(kTrace, {w, Semiring::Arctic, IndexMode::NonStrict, NoWeighting{}}).back());
}

TEST(Argmax, WorkedExampleForwardRows) {
    auto trace = arctic_iss_with_indices(kTrace, parse_word("[1][1^(-1)][1]", 1));
    ASSERT_EQ(trace.forward_indices.size(), 3u);
    EXPECT_EQ(trace.forward_indices[0], (std::vector<std::size_t>{1, 2, 2, 2, 2, 6, 6, 6}));
    EXPECT_EQ(trace.forward_indices[1], (std::vector<std::size_t>{1, 1, 3, 3, 3, 3, 3, 3}));
    // The running maximum at level 3 improves at t = 4 (value 9) and t = 6
    // (value 12), so the recursion stores 4 and 6 there.
    EXPECT_EQ(trace.forward_indices[2], (std::vector<std::size_t>{1, 2, 2, 4, 4, 6, 6, 6}));
}

TEST(Argmax, WorkedExampleCorrectedTuple) {
    auto trace = arctic_iss_with_indices(kTrace, parse_word("[1][1^(-1)][1]", 1));
    EXPECT_EQ(trace.indices[0], (std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(trace.tuple_at(8), (std::vector<std::size_t>{2, 3, 6}));
    EXPECT_EQ(evaluate_at(kTrace, parse_word("[1][1^(-1)][1]", 1), {2, 3, 6}), 12);
}

TEST(Argmax, SingleStep) {
    auto trace = arctic_iss_with_indices({7}, parse_word("[1]", 1));
    EXPECT_EQ(trace.values, (std::vector<double>{7}));
    EXPECT_EQ(trace.indices, (Rows{{1}}));
    EXPECT_EQ(trace.tuple_at(1), (std::vector<std::size_t>{1}));
}

TEST(Argmax, EmptySeries) {
    auto trace = arctic_iss_with_indices(TimeSeries(1, 0), parse_word("[1][1]", 1));
    EXPECT_TRUE(trace.values.empty());
    EXPECT_EQ(trace.indices.size(), 2u);
}

TEST(Argmax, TiesKeepEarlierIndex) {
    auto trace = arctic_iss_with_indices({2, 2, 2}, parse_word("[1]", 1));
    EXPECT_EQ(trace.indices[0], (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Argmax, Errors) {
    EXPECT_THROW(arctic_iss_with_indices({1, 2}, parse_word("[2]", 2)), Error);
    EXPECT_THROW(evaluate_at({1, 2}, parse_word("[1][1]", 1), {1, 3}), Error);
    EXPECT_THROW(evaluate_at({1, 2}, parse_word("[1][1]", 1), {1}), Error);
}

TEST(ArgmaxProperty, TupleAttainsMaximum) {
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<std::size_t> tpick(1, 16);
    for (int c = 0; c < 200; ++c) {
        const std::size_t T = tpick(rng);
        const int d = 1 + c % 2;
        auto x = test::random_series(rng, static_cast<std::size_t>(d), T);
        Word w = test::random_word(rng, d, 6, 4, true);
        auto trace = arctic_iss_with_indices(x, w);
        IssSpec spec{w, Semiring::Arctic, IndexMode::NonStrict, NoWeighting{}};
        EXPECT_EQ(trace.values, iss(x, spec));
        EXPECT_EQ(trace.values.back(), iss_brute(x, spec).back());

        auto tuple = trace.tuple_at(T);
        for (std::size_t k = 1; k < tuple.size(); ++k) EXPECT_LE(tuple[k - 1], tuple[k]);
        EXPECT_GE(tuple.front(), 1u);
        EXPECT_LE(tuple.back(), T);
        EXPECT_DOUBLE_EQ(evaluate_at(x, w, tuple), trace.values.back());
    }
}
