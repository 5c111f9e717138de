#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "fruits/data.hpp"
#include "fruits/error.hpp"
#include "test_support.hpp"

using namespace fruits;
namespace fs = std::filesystem;

namespace {

class TempFile {
public:
    explicit TempFile(const std::string& content) {
        path_ = fs::temp_directory_path() /
                ("fruits_data_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                 "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".tsv");
        std::ofstream(path_) << content;
    }
    ~TempFile() { fs::remove(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::vector<double> values(const TimeSeries& x) {
    auto r = x.row(0);
    return {r.begin(), r.end()};
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ConfigError;
}

}  // namespace

TEST(LoadUcr, TabSeparated) {
    TempFile f("1\t0.5\t0.7\n2\t0.1\tNaN\t0.3\n");
    auto d = load_ucr(f.path());
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.labels, (std::vector<std::string>{"1", "2"}));
    EXPECT_EQ(values(d.samples[0]), (std::vector<double>{0.5, 0.7}));
    EXPECT_EQ(d.samples[1].length(), 3u);
    EXPECT_TRUE(std::isnan(d.samples[1](0, 1)));
}

TEST(LoadUcr, CommaSeparatedAndRagged) {
    TempFile f("a,1,2,3\n\nb, 4 ,,6,7\r\n");
    auto d = load_ucr(f.path());
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.labels[1], "b");
    EXPECT_EQ(d.samples[1].length(), 4u);
    EXPECT_EQ(d.samples[1](0, 0), 4);
    EXPECT_TRUE(std::isnan(d.samples[1](0, 1)));
}

TEST(LoadUcr, ExplicitDelimiter) {
    TempFile f("1,0.5,0.7\n");
    auto d = load_ucr(f.path(), Delimiter::Comma);
    EXPECT_EQ(values(d.samples[0]), (std::vector<double>{0.5, 0.7}));
    EXPECT_EQ(code_of([&] { load_ucr(f.path(), Delimiter::Tab); }), ErrorCode::MalformedLine);
}

TEST(LoadUcr, Errors) {
    TempFile empty("");
    EXPECT_EQ(code_of([&] { load_ucr(empty.path()); }), ErrorCode::EmptyDataset);
    EXPECT_EQ(code_of([] { load_ucr("/nonexistent/file.tsv"); }), ErrorCode::IoError);
    TempFile bad("1\t0.5\n2\t0.x\n");
    try {
        load_ucr(bad.path());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedLine);
        EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
    }
    TempFile label_only("3\n");
    EXPECT_EQ(code_of([&] { load_ucr(label_only.path()); }), ErrorCode::MalformedLine);
}

TEST(Rng, MatchesStandardEngine) {
    // the standard fixes the 10000th output of a default-seeded mt19937_64
    std::mt19937_64 e;
    e.discard(9999);
    EXPECT_EQ(e(), 9981545732273789042ULL);
    PortableRng a(3), b(3);
    for (int i = 0; i < 100; ++i) {
        auto v = a.below(7);
        EXPECT_LT(v, 7u);
        EXPECT_EQ(v, b.below(7));
    }
    double sum = 0;
    for (int i = 0; i < 20000; ++i) sum += a.normal();
    EXPECT_NEAR(sum / 20000, 0.0, 0.05);
    EXPECT_NE(derive_seed(7, 3), derive_seed(7, 4));
    EXPECT_EQ(derive_seed(7, 3), 10753165928301472203ULL);
}

TEST(Stutter, Examples) {
    TimeSeries x{1, 2, 3};
    EXPECT_EQ(stutter(x, 0.0, 5), x);
    // one repeat, drawn at the first step for this seed
    EXPECT_EQ(values(stutter(x, 1.0 / 3.0, 0)), (std::vector<double>{1, 1, 2, 3}));
    for (double p : {0.0, 0.1, 0.2, 0.5, 0.9})
        EXPECT_EQ(stutter(TimeSeries(1, 20), p, 1).length(), 20u + static_cast<std::size_t>(std::llround(p * 20)));
    EXPECT_THROW(stutter(x, -0.1, 0), Error);
}

TEST(Stutter, FixedSequence) {
    // pinned output: this sequence must not change across platforms
    TimeSeries x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    EXPECT_EQ(values(stutter(x, 0.5, 42)),
              (std::vector<double>{1, 1, 2, 2, 3, 3, 4, 5, 5, 6, 7, 7, 8, 9, 10}));
}

TEST(Stutter, Multivariate) {
    auto x = TimeSeries::from_rows({{1, 2, 3, 4}, {5, 6, 7, 8}});
    auto y = stutter(x, 0.5, 9);
    ASSERT_EQ(y.length(), 6u);
    for (std::size_t t = 0; t < 6; ++t) EXPECT_EQ(y(1, t), y(0, t) + 4);
}

TEST(StutterProperty, ReproducibleAndReversible) {
    std::mt19937_64 rng(101);
    for (int c = 0; c < 100; ++c) {
        auto x = test::random_series(rng, 1, 30);
        auto a = stutter(x, 0.5, static_cast<std::uint64_t>(c));
        auto b = stutter(x, 0.5, static_cast<std::uint64_t>(c));
        EXPECT_EQ(a, b);
        std::vector<double> dedup;
        for (double v : values(a))
            if (dedup.empty() || dedup.back() != v) dedup.push_back(v);
        EXPECT_EQ(dedup, values(x));
    }
}

TEST(LengthenTail, Examples) {
    TimeSeries x{1, 2};
    EXPECT_EQ(lengthen_tail(x, 0), x);
    EXPECT_EQ(values(lengthen_tail(x, 2)), (std::vector<double>{1, 2, 2, 2}));
    EXPECT_EQ(lengthen_tail(TimeSeries(2, 5), 3).length(), 8u);
}
