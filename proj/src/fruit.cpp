#include "fruits/fruit.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fruits/error.hpp"
#include "fruits/parallel.hpp"
#include "fruits/words.hpp"

namespace fruits {

using nlohmann::json;

std::vector<SieveSpec> standard_sieves() {
    std::vector<SieveSpec> sieves;
    for (const char* text : {"npi:0:0.5:1", "npi:1:0.5:1", "npi:2:0.5:1", "mpi:0:0.5:1",
                             "mpi:1:0.5:1", "mpi:2:0.5:1", "end"})
        sieves.push_back(parse_sieve(text));
    return sieves;
}

namespace {

std::vector<Weighting> cosine_grid() {
    std::vector<Weighting> grid;
    for (int b : {1, 2})
        for (int i : {1, 3, 5, 7, 9}) grid.push_back(CosineWeighting{b, i / 20.0});
    return grid;
}

}  // namespace

FruitConfig preset_reduced(int real_weight, int arctic_length, int cosine_weight) {
    if (real_weight < 1 || arctic_length < 1 || cosine_weight < 1)
        throw Error(ErrorCode::ConfigError, "reduced preset sizes must all be >= 1");

    BranchConfig real;
    real.prep = {PrepStep::IncLift, PrepStep::Std};
    real.semiring = Semiring::Real;
    real.mode = IndexMode::Strict;
    real.weightings = {ExponentialWeighting{ControlKind::Id, 50.0, false}};
    real.words = MaxWeightWords{real_weight};
    real.sieves = standard_sieves();

    BranchConfig arctic;
    arctic.prep = {PrepStep::IncLift};
    arctic.semiring = Semiring::Arctic;
    arctic.mode = IndexMode::NonStrict;
    arctic.weightings = {NoWeighting{}};
    arctic.words = AlternatingWords{{{1, 1}, {2, 2}, {1, 2}, {2, 1}}, arctic_length};
    arctic.sieves = standard_sieves();

    BranchConfig cosine;
    cosine.prep = {PrepStep::IncLift, PrepStep::Std};
    cosine.semiring = Semiring::Real;
    cosine.mode = IndexMode::Strict;
    cosine.weightings = cosine_grid();
    cosine.words = MaxWeightWords{cosine_weight};
    cosine.sieves = standard_sieves();

    FruitConfig config;
    config.name = "reduced-" + std::to_string(real_weight) + "-" + std::to_string(arctic_length) +
                  "-" + std::to_string(cosine_weight);
    config.branches = {std::move(real), std::move(arctic), std::move(cosine)};
    return config;
}

FruitConfig preset_general() {
    FruitConfig config = preset_reduced(6, 48, 4);
    config.name = "general";
    return config;
}

FruitConfig preset_twi() {
    const std::vector<SieveSpec> sieves = {parse_sieve("npi:1:0.5:1"), parse_sieve("mpi:1:0.5:1"),
                                           parse_sieve("end")};
    BranchConfig real;
    real.prep = {PrepStep::Inc};
    real.semiring = Semiring::Real;
    real.mode = IndexMode::Strict;
    real.weightings = {ExponentialWeighting{ControlKind::L1, 50.0, false}};
    real.words = MaxWeightWords{9};
    real.sieves = sieves;

    BranchConfig arctic;
    arctic.semiring = Semiring::Arctic;
    arctic.mode = IndexMode::NonStrict;
    arctic.weightings = {NoWeighting{}};
    arctic.words = AlternatingWords{{{1, 1}}, 48};
    arctic.sieves = sieves;

    FruitConfig config;
    config.name = "twi";
    config.branches = {std::move(real), std::move(arctic)};
    config.fixed_mpi_length = true;
    return config;
}

FruitConfig preset_by_name(std::string_view name) {
    if (name == "general") return preset_general();
    if (name == "twi") return preset_twi();
    if (name == "reduced")
        throw Error(ErrorCode::ConfigError,
                    "preset 'reduced' needs explicit sizes (real weight, arctic length, cosine weight)");
    throw Error(ErrorCode::ConfigError, "unknown preset '" + std::string(name) +
                                            "'; available presets: " + std::string(kPresetNames));
}

// ---------------------------------------------------------------- JSON

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<T>();
}

template <class T>
std::vector<T> scalar_or_list(const json& j) {
    if (j.is_array()) return j.get<std::vector<T>>();
    return {j.get<T>()};
}

std::vector<Weighting> weightings_from_json(const json& j) {
    std::vector<Weighting> out;
    if (j.is_array()) {
        for (const auto& item : j) {
            auto part = weightings_from_json(item);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    const std::string type = get_or<std::string>(j, "type", "none");
    if (type == "none") {
        out.push_back(NoWeighting{});
    } else if (type == "exponential") {
        ExponentialWeighting w;
        w.control = control_kind_from_string(get_or<std::string>(j, "h", "id"));
        w.scale = get_or<double>(j, "scale", 50.0);
        w.include_outer = get_or<bool>(j, "outer", false);
        out.push_back(w);
    } else if (type == "cosine") {
        const auto powers = scalar_or_list<int>(j.at("b"));
        const auto freqs = scalar_or_list<double>(j.at("f"));
        for (int b : powers)
            for (double f : freqs) out.push_back(CosineWeighting{b, f});
    } else {
        throw Error(ErrorCode::ConfigError, "unknown weighting type '" + type + "'");
    }
    return out;
}

json weighting_to_json(const Weighting& w) {
    if (std::holds_alternative<NoWeighting>(w)) return {{"type", "none"}};
    if (const auto* e = std::get_if<ExponentialWeighting>(&w))
        return {{"type", "exponential"},
                {"h", std::string(to_string(e->control))},
                {"scale", e->scale},
                {"outer", e->include_outer}};
    const auto& c = std::get<CosineWeighting>(w);
    return {{"type", "cosine"}, {"b", c.power}, {"f", c.frequency}};
}

WordSource words_from_json(const json& j) {
    if (j.contains("max_weight")) return MaxWeightWords{j.at("max_weight").get<int>()};
    if (j.contains("list")) return WordList{j.at("list").get<std::vector<std::string>>()};
    if (j.contains("alternating")) {
        const auto& a = j.at("alternating");
        AlternatingWords words;
        words.length = a.at("length").get<int>();
        const auto& dims = a.at("dims");
        if (dims.is_array() && !dims.empty() && dims.front().is_number()) {
            words.dims.emplace_back(dims.at(0).get<int>(), dims.at(1).get<int>());
        } else {
            for (const auto& pair : dims)
                words.dims.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
        }
        return words;
    }
    throw Error(ErrorCode::ConfigError, "words must give max_weight, list or alternating");
}

json words_to_json(const WordSource& source) {
    if (const auto* m = std::get_if<MaxWeightWords>(&source)) return {{"max_weight", m->max_weight}};
    if (const auto* l = std::get_if<WordList>(&source)) return {{"list", l->words}};
    const auto& a = std::get<AlternatingWords>(source);
    json dims = json::array();
    for (const auto& [x, y] : a.dims) dims.push_back({x, y});
    return {{"alternating", {{"dims", dims}, {"length", a.length}}}};
}

}  // namespace

FruitConfig config_from_json(const json& j) {
    try {
        FruitConfig config;
        config.name = get_or<std::string>(j, "name", "custom");
        config.fixed_mpi_length = get_or<bool>(j, "fixed_mpi_length", false);
        for (const auto& b : j.at("branches")) {
            BranchConfig branch;
            for (const auto& step : get_or<std::vector<std::string>>(b, "prep", {}))
                branch.prep.push_back(prep_step_from_string(step));
            branch.semiring = semiring_from_string(get_or<std::string>(b, "semiring", "real"));
            branch.mode = index_mode_from_string(get_or<std::string>(b, "mode", "strict"));
            branch.weightings =
                b.contains("weighting") ? weightings_from_json(b.at("weighting"))
                                        : std::vector<Weighting>{NoWeighting{}};
            branch.words = words_from_json(b.at("words"));
            for (const auto& s : b.at("sieves")) branch.sieves.push_back(parse_sieve(s.get<std::string>()));
            if (branch.sieves.empty())
                throw Error(ErrorCode::ConfigError, "every branch needs at least one sieve");
            config.branches.push_back(std::move(branch));
        }
        if (config.branches.empty()) throw Error(ErrorCode::ConfigError, "config has no branches");
        return config;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("malformed config: ") + e.what());
    }
}

json config_to_json(const FruitConfig& config) {
    json branches = json::array();
    for (const auto& b : config.branches) {
        json prep = json::array();
        for (PrepStep step : b.prep) prep.push_back(std::string(to_string(step)));
        json weighting;
        if (b.weightings.size() == 1) {
            weighting = weighting_to_json(b.weightings.front());
        } else {
            weighting = json::array();
            for (const auto& w : b.weightings) weighting.push_back(weighting_to_json(w));
        }
        json sieves = json::array();
        for (const auto& s : b.sieves) sieves.push_back(format_sieve(s));
        branches.push_back({{"prep", prep},
                            {"semiring", std::string(to_string(b.semiring))},
                            {"mode", std::string(to_string(b.mode))},
                            {"weighting", weighting},
                            {"words", words_to_json(b.words)},
                            {"sieves", sieves}});
    }
    return {{"name", config.name}, {"fixed_mpi_length", config.fixed_mpi_length}, {"branches", branches}};
}

// ---------------------------------------------------------------- specs

std::vector<IssSpec> resolve_specs(const BranchConfig& branch, std::size_t input_dims) {
    const std::size_t dims = output_dims(branch.prep, input_dims);
    std::vector<Word> words;
    if (const auto* m = std::get_if<MaxWeightWords>(&branch.words)) {
        words = enumerate_words(static_cast<int>(dims), m->max_weight);
    } else if (const auto* l = std::get_if<WordList>(&branch.words)) {
        for (const auto& text : l->words) words.push_back(parse_word(text, static_cast<int>(dims)));
    } else {
        const auto& a = std::get<AlternatingWords>(branch.words);
        for (const auto& [x, y] : a.dims) {
            auto [plus, minus] = alternating_arctic_words(x, y, a.length);
            words.push_back(std::move(plus));
            words.push_back(std::move(minus));
        }
    }
    if (branch.weightings.empty())
        throw Error(ErrorCode::ConfigError, "a branch needs at least one weighting");

    std::vector<IssSpec> specs;
    specs.reserve(words.size() * branch.weightings.size());
    for (const auto& w : words) {
        for (const auto& weighting : branch.weightings) {
            IssSpec spec{w, branch.semiring, branch.mode, weighting};
            validate(spec, dims);
            specs.push_back(std::move(spec));
        }
    }
    return specs;
}

std::size_t feature_count(const FruitConfig& config, std::size_t input_dims) {
    std::size_t n = 0;
    for (const auto& b : config.branches) n += resolve_specs(b, input_dims).size() * b.sieves.size();
    return n;
}

std::string ColumnInfo::label() const {
    std::ostringstream out;
    out << "b" << branch << "|" << word << "|" << semiring << "|" << mode << "|" << weighting << "|"
        << sieve;
    return out.str();
}

// ---------------------------------------------------------------- fit / transform

namespace {

struct PreparedBranch {
    std::vector<TimeSeries> series;
    // Series the weighting control and coquantiles read. When the chain ends
    // with `inc` this is the series that step differenced, so that
    // cumulative absolute increments refer to the undifferenced signal.
    std::vector<TimeSeries> control;
};

PreparedBranch prepare_branch(const BranchConfig& branch, const std::vector<TimeSeries>& filled,
                              std::size_t workers) {
    PreparedBranch out;
    out.series.resize(filled.size());
    const bool split_control = !branch.prep.empty() && branch.prep.back() == PrepStep::Inc;
    if (split_control) out.control.resize(filled.size());
    PrepChain head(branch.prep.begin(), branch.prep.end() - (split_control ? 1 : 0));
    parallel_for(filled.size(), workers, [&](std::size_t i) {
        if (split_control) {
            out.control[i] = apply_chain(head, filled[i]);
            out.series[i] = increments(out.control[i]);
        } else {
            out.series[i] = apply_chain(branch.prep, filled[i]);
        }
    });
    return out;
}

// Strict arctic sums start at the bottom element for t < p; those entries
// take the first finite value so increments do not jump from -inf.
void replace_leading_bottom(std::vector<double>& z) {
    std::size_t first = 0;
    while (first < z.size() && !std::isfinite(z[first])) ++first;
    const double fill = first < z.size() ? z[first] : 0.0;
    for (std::size_t t = 0; t < first; ++t) z[t] = fill;
}

std::vector<TimeSeries> fill_all(const std::vector<TimeSeries>& data, std::size_t workers) {
    std::vector<TimeSeries> filled(data.size());
    parallel_for(data.size(), workers, [&](std::size_t i) { filled[i] = nan_fill(data[i]); });
    return filled;
}

std::size_t common_dims(const std::vector<TimeSeries>& data) {
    const std::size_t d = data.front().dims();
    for (const auto& x : data) {
        if (x.dims() != d)
            throw Error(ErrorCode::DimensionMismatch, "all samples must have the same dimension");
        if (x.length() == 0) throw Error(ErrorCode::DimensionMismatch, "empty sample");
    }
    return d;
}

struct Task {
    std::size_t branch;
    std::size_t spec;
    std::size_t first_column;
};

FeatureMatrix run(FittedFruit& fitted, const std::vector<TimeSeries>& data, bool fitting,
                  const RunOptions& options) {
    const std::size_t n = data.size();
    const auto filled = fill_all(data, options.workers);

    std::vector<PreparedBranch> prepared;
    prepared.reserve(fitted.config.branches.size());
    for (const auto& branch : fitted.config.branches)
        prepared.push_back(prepare_branch(branch, filled, options.workers));

    std::vector<Task> tasks;
    std::size_t column = 0;
    for (std::size_t b = 0; b < fitted.specs.size(); ++b) {
        for (std::size_t s = 0; s < fitted.specs[b].size(); ++s) {
            tasks.push_back({b, s, column});
            column += fitted.config.branches[b].sieves.size();
        }
    }

    FeatureMatrix m;
    m.rows = n;
    m.cols = column;
    m.data.assign(n * column, 0.0);
    m.columns = fitted.columns;
    if (fitting) fitted.windows.assign(column, std::nullopt);

    parallel_for(tasks.size(), options.workers, [&](std::size_t task_index) {
        const Task& task = tasks[task_index];
        const BranchConfig& branch = fitted.config.branches[task.branch];
        const IssSpec& spec = fitted.specs[task.branch][task.spec];
        const PreparedBranch& input = prepared[task.branch];
        const bool has_control = !input.control.empty();

        std::vector<std::vector<double>> sums(n);
        for (std::size_t i = 0; i < n; ++i) {
            const TimeSeries* control = has_control ? &input.control[i] : nullptr;
            sums[i] = iss(input.series[i], spec, control);
            replace_leading_bottom(sums[i]);
        }

        for (std::size_t k = 0; k < branch.sieves.size(); ++k) {
            const SieveSpec& sieve = branch.sieves[k];
            const std::size_t c = task.first_column + k;
            if (fitting && sieve.needs_window()) {
                std::vector<double> pool;
                for (const auto& z : sums) {
                    const auto inc = kth_increments(z, sieve.order);
                    pool.insert(pool.end(), inc.begin(), inc.end());
                }
                fitted.windows[c] = fit_window(std::move(pool), sieve.alpha_l, sieve.alpha_r);
            }
            const Window window = fitted.windows[c].value_or(Window{});
            for (std::size_t i = 0; i < n; ++i) {
                const auto& z = sums[i];
                double value = 0.0;
                switch (sieve.kind) {
                    case SieveKind::End: value = sieve_end(z); break;
                    case SieveKind::CoQuantile: {
                        const TimeSeries& source = has_control ? input.control[i] : input.series[i];
                        value = z[coquantile_index(source, sieve.q, ControlKind::L1) - 1];
                        break;
                    }
                    case SieveKind::Npi: value = sieve_npi(z, sieve.order, window); break;
                    case SieveKind::Mpi:
                        value = sieve_mpi(z, sieve.order, window, fitted.mpi_denominator);
                        break;
                }
                // Overflowing real sums are the only source of non-finite values.
                m(i, c) = std::isfinite(value) ? value : 0.0;
            }
        }
    });
    return m;
}

FittedFruit prepare_fit(const FruitConfig& config, const std::vector<TimeSeries>& train) {
    if (train.empty()) throw Error(ErrorCode::EmptyTrainingSet, "training set is empty");
    FittedFruit fitted;
    fitted.config = config;
    fitted.input_dims = common_dims(train);
    for (std::size_t b = 0; b < config.branches.size(); ++b) {
        const auto& branch = config.branches[b];
        fitted.specs.push_back(resolve_specs(branch, fitted.input_dims));
        for (const auto& spec : fitted.specs.back()) {
            for (const auto& sieve : branch.sieves) {
                fitted.columns.push_back({b, format_word(spec.word),
                                          std::string(to_string(spec.semiring)),
                                          std::string(to_string(spec.mode)),
                                          describe(spec.weighting), format_sieve(sieve)});
            }
        }
    }
    if (config.fixed_mpi_length) {
        double total = 0.0;
        for (const auto& x : train) total += static_cast<double>(x.length());
        fitted.mpi_denominator = total / static_cast<double>(train.size());
    }
    return fitted;
}

}  // namespace

std::pair<FittedFruit, FeatureMatrix> fit_transform(const FruitConfig& config,
                                                    const std::vector<TimeSeries>& train,
                                                    const RunOptions& options) {
    FittedFruit fitted = prepare_fit(config, train);
    FeatureMatrix m = run(fitted, train, true, options);
    return {std::move(fitted), std::move(m)};
}

FittedFruit fit(const FruitConfig& config, const std::vector<TimeSeries>& train,
                const RunOptions& options) {
    return fit_transform(config, train, options).first;
}

FeatureMatrix transform(const FittedFruit& fitted, const std::vector<TimeSeries>& data,
                        const RunOptions& options) {
    if (data.empty()) {
        FeatureMatrix m;
        m.cols = fitted.columns.size();
        m.columns = fitted.columns;
        return m;
    }
    if (common_dims(data) != fitted.input_dims)
        throw Error(ErrorCode::DimensionMismatch, "samples have a different dimension than in fit");
    FittedFruit copy = fitted;
    return run(copy, data, false, options);
}

// ---------------------------------------------------------------- persistence

json fitted_to_json(const FittedFruit& fitted) {
    json windows = json::array();
    for (const auto& w : fitted.windows) {
        if (!w) {
            windows.push_back(nullptr);
            continue;
        }
        json upper = std::isinf(w->upper) ? json(nullptr) : json(w->upper);
        windows.push_back({w->lower, upper});
    }
    json j = {{"config", config_to_json(fitted.config)},
              {"input_dims", fitted.input_dims},
              {"windows", windows}};
    j["mpi_denominator"] = fitted.mpi_denominator ? json(*fitted.mpi_denominator) : json(nullptr);
    return j;
}

FittedFruit fitted_from_json(const json& j) {
    try {
        FruitConfig config = config_from_json(j.at("config"));
        const std::size_t dims = j.at("input_dims").get<std::size_t>();
        // Rebuild specs and provenance from the config with a single dummy
        // sample of the right dimension.
        FittedFruit fitted = prepare_fit(config, {TimeSeries(dims, 1)});
        fitted.mpi_denominator = j.at("mpi_denominator").is_null()
                                     ? std::nullopt
                                     : std::optional<double>(j.at("mpi_denominator").get<double>());
        const auto& windows = j.at("windows");
        if (windows.size() != fitted.columns.size())
            throw Error(ErrorCode::ConfigError, "stored windows do not match the config");
        fitted.windows.clear();
        for (const auto& w : windows) {
            if (w.is_null()) {
                fitted.windows.emplace_back(std::nullopt);
                continue;
            }
            Window window;
            window.lower = w.at(0).get<double>();
            window.upper = w.at(1).is_null() ? std::numeric_limits<double>::infinity()
                                             : w.at(1).get<double>();
            fitted.windows.emplace_back(window);
        }
        return fitted;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("malformed fitted model: ") + e.what());
    }
}

}  // namespace fruits
