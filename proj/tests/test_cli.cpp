#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "synthetic.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result run(const std::string& args, bool merge_stderr = true) {
    std::string cmd = std::string(FRUITS_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) out.push_back(f);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

class CliTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = fs::temp_directory_path() / ("fruits_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_ / "bench");
        write(dir_ / "Synth_TRAIN.tsv", fruits::test::sine_trend(24, 40, 1));
        write(dir_ / "Synth_TEST.tsv", fruits::test::sine_trend(24, 40, 2));
        write(dir_ / "bench" / "One_TRAIN.tsv", fruits::test::sine_trend(12, 30, 3));
        write(dir_ / "bench" / "One_TEST.tsv", fruits::test::sine_trend(12, 30, 4));
        fs::create_directories(dir_ / "bench" / "Two");
        write(dir_ / "bench" / "Two" / "Two_TRAIN.tsv", fruits::test::sine_trend(10, 25, 5));
        write(dir_ / "bench" / "Two" / "Two_TEST.tsv", fruits::test::sine_trend(10, 25, 6));
        fs::create_directories(dir_ / "empty");
        std::ofstream(dir_ / "series.csv") << "1,3,-4,2,0,5,1,1\n";
        std::ofstream(dir_ / "single.csv") << "7\n";
        std::ofstream(dir_ / "bad.tsv") << "1\t0.5\n2\tzz\n";
    }
    static void TearDownTestSuite() { fs::remove_all(dir_); }

    static void write(const fs::path& p, const fruits::LabeledDataset& d) {
        std::ofstream(p) << fruits::test::to_ucr_text(d);
    }
    static std::string path(const std::string& name) { return (dir_ / name).string(); }

    static inline fs::path dir_;
};

}  // namespace

TEST_F(CliTest, WordsEnumeration) {
    auto r = run("words --d 2 --max-weight 2");
    ASSERT_EQ(r.status, 0);
    auto ls = lines(r.out);
    EXPECT_EQ(ls.back(), "count: 9");
    int weight_two = 0;
    for (const auto& l : ls) weight_two += l == "[1][1]" || l == "[1][2]" || l == "[2][1]" ||
                                           l == "[2][2]" || l == "[1^2]" || l == "[12]" || l == "[2^2]";
    EXPECT_EQ(weight_two, 7);
    EXPECT_EQ(lines(run("words --d 2 --max-weight 5").out).back(), "count: 395");
}

TEST_F(CliTest, WordsAlternating) {
    auto r = run("words --alternating 1,1,3");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(lines(r.out), (std::vector<std::string>{"[1][1^(-1)][1]", "[1^(-1)][1][1^(-1)]", "count: 2"}));
    EXPECT_NE(run("words").status, 0);
    EXPECT_NE(run("words --alternating 1,1").status, 0);
}

TEST_F(CliTest, ArgmaxTrace) {
    auto r = run("argmax --input " + path("series.csv") + " --word '[1][1^(-1)][1]'");
    ASSERT_EQ(r.status, 0) << r.out;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 9u);
    EXPECT_EQ(ls[0], "t,z,J1,J2,J3,forward_J1,forward_J2,forward_J3");
    std::vector<std::string> j1;
    for (std::size_t i = 1; i < ls.size(); ++i) j1.push_back(fields(ls[i])[2]);
    EXPECT_EQ(j1, (std::vector<std::string>{"1", "2", "2", "2", "2", "2", "2", "2"}));
    auto last = fields(ls.back());
    EXPECT_EQ(last[1], "12");
    EXPECT_EQ((std::vector<std::string>{last[2], last[3], last[4]}),
              (std::vector<std::string>{"2", "3", "6"}));
}

TEST_F(CliTest, ArgmaxEdgeCases) {
    auto single = run("argmax --input " + path("single.csv") + " --word '[1]'");
    ASSERT_EQ(single.status, 0);
    EXPECT_EQ(lines(single.out).back(), "1,7,1,1");
    auto real = run("argmax --input " + path("series.csv") + " --word '[1]' --semiring real");
    EXPECT_NE(real.status, 0);
    EXPECT_EQ(real.out.rfind("error:", 0), 0u);
    auto bad = run("argmax --input " + path("series.csv") + " --word '[1'");
    EXPECT_NE(bad.status, 0);
    EXPECT_EQ(bad.out.rfind("error:", 0), 0u);
}

TEST_F(CliTest, EvalGeneral) {
    auto r = run("eval --train " + path("Synth_TRAIN.tsv") + " --test " + path("Synth_TEST.tsv") +
                 " --config general", false);
    ASSERT_EQ(r.status, 0) << r.out;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], "dataset,config,fit_seconds,transform_seconds,accuracy");
    auto f = fields(ls[1]);
    EXPECT_EQ(f[0], "Synth");
    EXPECT_EQ(f[1], "general");
    EXPECT_EQ(f[4], "1");
}

TEST_F(CliTest, EvalTwiMemorises) {
    auto r = run("eval --train " + path("Synth_TRAIN.tsv") + " --test " + path("Synth_TRAIN.tsv") +
                 " --config twi", false);
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(fields(lines(r.out)[1])[4], "1");
}

TEST_F(CliTest, EvalErrors) {
    auto bad = run("eval --train " + path("Synth_TRAIN.tsv") + " --test " + path("Synth_TEST.tsv") +
                   " --config fancy");
    EXPECT_NE(bad.status, 0);
    EXPECT_EQ(bad.out.rfind("error:", 0), 0u);
    EXPECT_NE(bad.out.find("general, twi, reduced"), std::string::npos);
    EXPECT_EQ(lines(bad.out).size(), 1u);

    auto reduced = run("eval --train " + path("Synth_TRAIN.tsv") + " --test " +
                       path("Synth_TEST.tsv") + " --config reduced");
    EXPECT_NE(reduced.status, 0);
    EXPECT_NE(reduced.out.find("--real-weight"), std::string::npos);

    auto missing = run("eval --train " + path("Synth_TRAIN.tsv"));
    EXPECT_NE(missing.status, 0);
    EXPECT_EQ(missing.out.rfind("error:", 0), 0u);

    auto unknown = run("eval --train a --test b --frobnicate");
    EXPECT_NE(unknown.status, 0);
    EXPECT_EQ(unknown.out.rfind("error:", 0), 0u);

    auto malformed = run("eval --train " + path("bad.tsv") + " --test " + path("bad.tsv") +
                         " --config twi");
    EXPECT_NE(malformed.status, 0);
    EXPECT_NE(malformed.out.find("bad.tsv:2"), std::string::npos);

    EXPECT_NE(run("").status, 0);
}

TEST_F(CliTest, EvalReducedAndJsonConfig) {
    auto r = run("eval --train " + path("Synth_TRAIN.tsv") + " --test " + path("Synth_TEST.tsv") +
                 " --config reduced --real-weight 2 --arctic-length 3 --cos-weight 1", false);
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(fields(lines(r.out)[1])[1], "reduced-2-3-1");

    std::ofstream(path("tiny.json")) << R"({"branches": [{"prep": ["inc"], "words": {"max_weight": 2},
        "sieves": ["end", "npi:1:0.5:1"]}]})";
    auto j = run("eval --train " + path("Synth_TRAIN.tsv") + " --test " + path("Synth_TEST.tsv") +
                 " --config " + path("tiny.json"), false);
    ASSERT_EQ(j.status, 0) << j.out;
    EXPECT_EQ(fields(lines(j.out)[1])[1], "tiny");
}

TEST_F(CliTest, StutterEvalTwi) {
    const std::string common =
        "--train " + path("Synth_TRAIN.tsv") + " --test " + path("Synth_TEST.tsv") + " --config twi";
    auto r = run("stutter-eval " + common + " --proportions 0,0.1,0.2,0.5,0.9 --seed 7", false);
    ASSERT_EQ(r.status, 0) << r.out;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 6u);
    EXPECT_EQ(ls[0], "proportion,accuracy");
    const std::string acc = fields(ls[1])[1];
    for (std::size_t i = 2; i < ls.size(); ++i) EXPECT_EQ(fields(ls[i])[1], acc);
    auto e = run("eval " + common, false);
    EXPECT_EQ(fields(lines(e.out)[1])[4], acc);
}

TEST_F(CliTest, StutterEvalLengthenTrain) {
    auto r = run("stutter-eval --train " + path("Synth_TRAIN.tsv") + " --test " +
                 path("Synth_TEST.tsv") +
                 " --config reduced --real-weight 2 --arctic-length 3 --cos-weight 1"
                 " --proportions 0,0.5 --lengthen-train", false);
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(lines(r.out).size(), 3u);
    EXPECT_NE(run("stutter-eval --train " + path("Synth_TRAIN.tsv") + " --test " +
                  path("Synth_TEST.tsv") + " --config twi --proportions 0,x").status,
              0);
}

TEST_F(CliTest, Benchmark) {
    auto empty = run("benchmark --dir " + path("empty") + " --config twi", false);
    ASSERT_EQ(empty.status, 0);
    EXPECT_EQ(lines(empty.out),
              (std::vector<std::string>{"dataset,config,fit_seconds,transform_seconds,accuracy,status"}));

    auto a = run("benchmark --dir " + path("bench") + " --config twi --seed 1", false);
    auto b = run("benchmark --dir " + path("bench") + " --config twi --seed 1", false);
    ASSERT_EQ(a.status, 0);
    auto la = lines(a.out), lb = lines(b.out);
    ASSERT_EQ(la.size(), 3u);
    ASSERT_EQ(lb.size(), 3u);
    for (std::size_t i = 1; i < 3; ++i) {
        auto fa = fields(la[i]), fb = fields(lb[i]);
        EXPECT_EQ(fa[0], fb[0]);
        EXPECT_EQ(fa[4], fb[4]);
        EXPECT_EQ(fa[5], "ok");
    }
    EXPECT_EQ(fields(la[1])[0], "One");
    EXPECT_EQ(fields(la[2])[0], "Two");
}

TEST_F(CliTest, BenchmarkRecordsFailures) {
    fs::create_directories(dir_ / "mixed");
    fs::copy_file(dir_ / "bench" / "One_TRAIN.tsv", dir_ / "mixed" / "One_TRAIN.tsv",
                  fs::copy_options::overwrite_existing);
    fs::copy_file(dir_ / "bench" / "One_TEST.tsv", dir_ / "mixed" / "One_TEST.tsv",
                  fs::copy_options::overwrite_existing);
    std::ofstream(dir_ / "mixed" / "Broken_TRAIN.tsv") << "1\tx\n";
    std::ofstream(dir_ / "mixed" / "Broken_TEST.tsv") << "1\t1\n";
    auto r = run("benchmark --dir " + path("mixed") + " --config twi", false);
    ASSERT_EQ(r.status, 0);
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(fields(ls[1])[0], "Broken");
    EXPECT_EQ(fields(ls[1])[5].rfind("failed:", 0), 0u);
    EXPECT_EQ(fields(ls[2])[5], "ok");
}

TEST_F(CliTest, FitPredictTransform) {
    const std::string model = path("model.json");
    ASSERT_EQ(run("fit --train " + path("Synth_TRAIN.tsv") + " --config twi --model " + model).status, 0);
    auto p = run("predict --model " + model + " --input " + path("Synth_TEST.tsv"), false);
    ASSERT_EQ(p.status, 0);
    auto ls = lines(p.out);
    EXPECT_EQ(ls[0], "index,label,predicted");
    EXPECT_EQ(ls.size(), 25u);
    int hits = 0;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        auto f = fields(ls[i]);
        hits += f[1] == f[2];
    }
    auto e = run("eval --train " + path("Synth_TRAIN.tsv") + " --test " + path("Synth_TEST.tsv") +
                 " --config twi", false);
    EXPECT_DOUBLE_EQ(hits / 24.0, std::stod(fields(lines(e.out)[1])[4]));

    auto t = run("transform --model " + model + " --input " + path("Synth_TEST.tsv"), false);
    ASSERT_EQ(t.status, 0);
    auto tl = lines(t.out);
    EXPECT_EQ(tl.size(), 25u);
    EXPECT_EQ(tl[0].rfind("label,", 0), 0u);

    auto missing = run("predict --model " + path("nope.json") + " --input " + path("Synth_TEST.tsv"));
    EXPECT_NE(missing.status, 0);
    EXPECT_EQ(missing.out.rfind("error:", 0), 0u);
}
