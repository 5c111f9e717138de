#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fruits/argmax.hpp"
#include "fruits/classify.hpp"
#include "fruits/data.hpp"
#include "fruits/error.hpp"
#include "fruits/fruit.hpp"
#include "fruits/words.hpp"

namespace fs = std::filesystem;
using namespace fruits;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fmt_seconds(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Output goes to --out when given, else stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(ErrorCode::IoError, "cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct ConfigOptions {
    std::string config = "general";
    int real_weight = 0;
    int arctic_length = 0;
    int cos_weight = 0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--config", config, "preset name (general, twi, reduced) or JSON file")
            ->capture_default_str();
        cmd->add_option("--real-weight", real_weight, "reduced preset: max word weight, real branch");
        cmd->add_option("--arctic-length", arctic_length, "reduced preset: alternating word length");
        cmd->add_option("--cos-weight", cos_weight, "reduced preset: max word weight, cosine branch");
    }

    FruitConfig resolve() const {
        if (config == "reduced") {
            if (real_weight < 1 || arctic_length < 1 || cos_weight < 1)
                throw Error(ErrorCode::ConfigError,
                            "preset 'reduced' needs --real-weight, --arctic-length and --cos-weight");
            return preset_reduced(real_weight, arctic_length, cos_weight);
        }
        if (config == "general" || config == "twi") return preset_by_name(config);
        if (fs::is_regular_file(config)) {
            std::ifstream in(config);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::ConfigError, config + ": " + e.what());
            }
            FruitConfig c = config_from_json(j);
            if (!j.contains("name")) c.name = fs::path(config).stem().string();
            return c;
        }
        return preset_by_name(config);  // throws, listing the presets
    }
};

std::string dataset_name(const fs::path& train) {
    std::string stem = train.stem().string();
    const std::string suffix = "_TRAIN";
    if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
    return stem;
}

struct EvalResult {
    double fit_seconds = 0;
    double transform_seconds = 0;
    double accuracy = 0;
};

struct Trained {
    FittedFruit fruit;
    RidgeModel ridge;
};

Trained train_model(const FruitConfig& config, const LabeledDataset& train, const RunOptions& run) {
    auto [fitted, features] = fit_transform(config, train.samples, run);
    RidgeModel ridge = ridge_fit(to_eigen(features), train.labels);
    return {std::move(fitted), std::move(ridge)};
}

std::vector<std::string> predict(const Trained& model, const std::vector<TimeSeries>& samples,
                                 const RunOptions& run) {
    return ridge_predict(model.ridge, to_eigen(transform(model.fruit, samples, run)));
}

EvalResult evaluate(const FruitConfig& config, const LabeledDataset& train,
                    const LabeledDataset& test, const RunOptions& run) {
    EvalResult r;
    auto start = Clock::now();
    Trained model = train_model(config, train, run);
    r.fit_seconds = seconds_since(start);
    start = Clock::now();
    auto predicted = predict(model, test.samples, run);
    r.transform_seconds = seconds_since(start);
    r.accuracy = accuracy(predicted, test.labels);
    return r;
}

constexpr const char* kEvalHeader = "dataset,config,fit_seconds,transform_seconds,accuracy";

std::vector<double> read_values(const std::string& path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw Error(ErrorCode::IoError, "cannot open " + path);
        in = &file;
    }
    std::vector<double> values;
    std::string token;
    std::stringstream all;
    all << in->rdbuf();
    std::string text = all.str();
    std::replace_if(text.begin(), text.end(), [](char c) { return c == ',' || c == '\t' || c == '\r'; }, ' ');
    std::istringstream tokens(text);
    while (tokens >> token) {
        double v = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw Error(ErrorCode::ParseError, path + ": bad value '" + token + "'");
        values.push_back(v);
    }
    if (values.empty()) throw Error(ErrorCode::EmptyDataset, path + " holds no values");
    return values;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        double v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size())
            throw Error(ErrorCode::ParseError, "bad list entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void save_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << j.dump() << "\n";
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigError, path + ": " + e.what());
    }
}

Trained load_model(const std::string& path) {
    auto j = load_json(path);
    try {
        return {fitted_from_json(j.at("fruit")), model_from_json(j.at("ridge"))};
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigError, path + ": " + e.what());
    }
}

// <name>_TRAIN[.ext] next to <name>_TEST[.ext], anywhere below `dir`.
std::vector<std::pair<fs::path, fs::path>> find_pairs(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
    std::vector<std::pair<fs::path, fs::path>> pairs;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const fs::path& p = entry.path();
        const std::string stem = p.stem().string();
        if (!stem.ends_with("_TRAIN")) continue;
        fs::path test = p.parent_path() / (stem.substr(0, stem.size() - 6) + "_TEST" + p.extension().string());
        if (fs::is_regular_file(test)) pairs.emplace_back(p, test);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterated-sums signature features and ridge classification for time series"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    // eval
    auto* eval = app.add_subcommand("eval", "fit on a train file, report test accuracy as CSV");
    std::string train_path, test_path, out_path;
    std::uint64_t seed = 0;
    ConfigOptions eval_config;
    eval->add_option("--train", train_path, "UCR-style training file")->required();
    eval->add_option("--test", test_path, "UCR-style test file")->required();
    eval->add_option("--out", out_path, "CSV output (default stdout)");
    eval->add_option("--seed", seed, "random seed");
    eval_config.add_to(eval);

    // stutter-eval
    auto* stut = app.add_subcommand("stutter-eval", "accuracy on stuttered copies of the test set");
    std::string proportions = "0,0.1,0.2,0.5,0.9";
    bool lengthen_train = false;
    ConfigOptions stut_config;
    stut->add_option("--train", train_path)->required();
    stut->add_option("--test", test_path)->required();
    stut->add_option("--out", out_path);
    stut->add_option("--seed", seed)->capture_default_str();
    stut->add_option("--proportions", proportions, "comma-separated stutter proportions")
        ->capture_default_str();
    stut->add_flag("--lengthen-train", lengthen_train,
                   "refit per proportion on training series padded with their last value");
    stut_config.add_to(stut);

    // words
    auto* words = app.add_subcommand("words", "list words");
    int dims = 0, max_weight = 0;
    std::string alternating;
    auto* d_opt = words->add_option("--d", dims, "number of dimensions");
    auto* w_opt = words->add_option("--max-weight", max_weight, "largest word weight");
    auto* a_opt = words->add_option("--alternating", alternating, "a,b,length");
    d_opt->needs(w_opt);
    w_opt->needs(d_opt);
    a_opt->excludes(d_opt)->excludes(w_opt);

    // argmax
    auto* arg = app.add_subcommand("argmax", "arctic iterated sum with the maximising index tuple");
    std::string input_path, word_text, semiring_name = "arctic";
    arg->add_option("--input", input_path, "file of values (comma/space/newline separated, - for stdin)")
        ->required();
    arg->add_option("--word", word_text, "word, e.g. [1][1^(-1)][1]")->required();
    arg->add_option("--semiring", semiring_name)->capture_default_str();

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "eval over every <name>_TRAIN/<name>_TEST pair");
    std::string dir;
    ConfigOptions bench_config;
    bench->add_option("--dir", dir, "directory searched recursively")->required();
    bench->add_option("--out", out_path);
    bench->add_option("--seed", seed);
    bench_config.add_to(bench);

    // fit / predict / transform
    auto* fitcmd = app.add_subcommand("fit", "fit features and classifier, save a model file");
    std::string model_path;
    ConfigOptions fit_config;
    fitcmd->add_option("--train", train_path)->required();
    fitcmd->add_option("--model", model_path, "output model JSON")->required();
    fit_config.add_to(fitcmd);

    auto* pred = app.add_subcommand("predict", "predict labels with a saved model");
    pred->add_option("--model", model_path)->required();
    pred->add_option("--input", input_path, "UCR-style file")->required();
    pred->add_option("--out", out_path);

    auto* trans = app.add_subcommand("transform", "write the feature matrix of a file");
    trans->add_option("--model", model_path)->required();
    trans->add_option("--input", input_path, "UCR-style file")->required();
    trans->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        std::cerr << "error: " << msg << "\n";
        return 2;
    }

    const RunOptions run{threads};
    try {
        if (*eval) {
            const FruitConfig config = eval_config.resolve();
            const auto train = load_ucr(train_path);
            const auto test = load_ucr(test_path);
            const EvalResult r = evaluate(config, train, test, run);
            Output out(out_path);
            out.stream() << kEvalHeader << "\n"
                         << dataset_name(train_path) << "," << config.name << ","
                         << fmt_seconds(r.fit_seconds) << "," << fmt_seconds(r.transform_seconds)
                         << "," << fmt(r.accuracy) << "\n";
        } else if (*stut) {
            const FruitConfig config = stut_config.resolve();
            const auto train = load_ucr(train_path);
            const auto test = load_ucr(test_path);
            const auto levels = parse_list(proportions);
            std::optional<Trained> shared;
            if (!lengthen_train) shared = train_model(config, train, run);
            Output out(out_path);
            out.stream() << "proportion,accuracy\n";
            for (double p : levels) {
                if (p < 0) throw Error(ErrorCode::InvalidSpec, "stutter proportions must be >= 0");
                std::vector<TimeSeries> stuttered;
                for (std::size_t i = 0; i < test.size(); ++i)
                    stuttered.push_back(stutter(test.samples[i], p, derive_seed(seed, i)));
                double acc;
                if (shared) {
                    acc = accuracy(predict(*shared, stuttered, run), test.labels);
                } else {
                    LabeledDataset padded = train;
                    for (auto& x : padded.samples)
                        x = lengthen_tail(x, static_cast<std::size_t>(
                                                 std::llround(p * static_cast<double>(x.length()))));
                    acc = accuracy(predict(train_model(config, padded, run), stuttered, run),
                                   test.labels);
                }
                out.stream() << fmt(p) << "," << fmt(acc) << "\n";
            }
        } else if (*words) {
            std::vector<Word> list;
            if (!alternating.empty()) {
                const auto parts = parse_list(alternating);
                if (parts.size() != 3)
                    throw Error(ErrorCode::ParseError, "--alternating expects a,b,length");
                auto [plus, minus] = alternating_arctic_words(
                    static_cast<int>(parts[0]), static_cast<int>(parts[1]), static_cast<int>(parts[2]));
                list = {plus, minus};
            } else if (*d_opt) {
                list = enumerate_words(dims, max_weight);
            } else {
                throw Error(ErrorCode::ConfigError, "words needs --d and --max-weight, or --alternating");
            }
            for (const auto& w : list) std::cout << format_word(w) << "\n";
            std::cout << "count: " << list.size() << "\n";
        } else if (*arg) {
            if (semiring_from_string(semiring_name) != Semiring::Arctic)
                throw Error(ErrorCode::InvalidSpec, "argmax tracking requires the arctic semiring");
            const TimeSeries x = TimeSeries::univariate(read_values(input_path));
            const Word w = parse_word(word_text, 1);
            const ArgmaxTrace trace = arctic_iss_with_indices(x, w);
            std::cout << "t,z";
            for (std::size_t k = 1; k <= w.length(); ++k) std::cout << ",J" << k;
            for (std::size_t k = 1; k <= w.length(); ++k) std::cout << ",forward_J" << k;
            std::cout << "\n";
            for (std::size_t t = 0; t < x.length(); ++t) {
                std::cout << t + 1 << "," << fmt(trace.values[t]);
                for (const auto& row : trace.indices) std::cout << "," << row[t];
                for (const auto& row : trace.forward_indices) std::cout << "," << row[t];
                std::cout << "\n";
            }
        } else if (*bench) {
            const FruitConfig config = bench_config.resolve();
            const auto pairs = find_pairs(dir);
            Output out(out_path);
            out.stream() << kEvalHeader << ",status\n";
            for (const auto& [train_file, test_file] : pairs) {
                const std::string name = dataset_name(train_file);
                try {
                    const EvalResult r = evaluate(config, load_ucr(train_file), load_ucr(test_file), run);
                    out.stream() << name << "," << config.name << "," << fmt_seconds(r.fit_seconds)
                                 << "," << fmt_seconds(r.transform_seconds) << "," << fmt(r.accuracy)
                                 << ",ok\n";
                } catch (const Error& e) {
                    std::string msg = e.what();
                    std::replace(msg.begin(), msg.end(), ',', ';');
                    std::replace(msg.begin(), msg.end(), '\n', ' ');
                    out.stream() << name << "," << config.name << ",,,," << "failed: " << msg << "\n";
                    std::cerr << "warning: " << name << ": " << e.what() << "\n";
                }
            }
        } else if (*fitcmd) {
            const FruitConfig config = fit_config.resolve();
            const Trained model = train_model(config, load_ucr(train_path), run);
            save_json({{"fruit", fitted_to_json(model.fruit)}, {"ridge", model_to_json(model.ridge)}},
                      model_path);
        } else if (*pred) {
            const Trained model = load_model(model_path);
            const auto data = load_ucr(input_path);
            const auto predicted = predict(model, data.samples, run);
            Output out(out_path);
            out.stream() << "index,label,predicted\n";
            for (std::size_t i = 0; i < predicted.size(); ++i)
                out.stream() << i << "," << data.labels[i] << "," << predicted[i] << "\n";
            std::cerr << "accuracy: " << fmt(accuracy(predicted, data.labels)) << "\n";
        } else if (*trans) {
            const Trained model = load_model(model_path);
            const auto data = load_ucr(input_path);
            const FeatureMatrix m = transform(model.fruit, data.samples, run);
            Output out(out_path);
            out.stream() << "label";
            for (const auto& c : m.columns) out.stream() << ",\"" << c.label() << "\"";
            out.stream() << "\n";
            for (std::size_t r = 0; r < m.rows; ++r) {
                out.stream() << data.labels[r];
                for (std::size_t c = 0; c < m.cols; ++c) out.stream() << "," << fmt(m(r, c));
                out.stream() << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        std::cerr << "error: " << msg << "\n";
        return 1;
    }
    return 0;
}
