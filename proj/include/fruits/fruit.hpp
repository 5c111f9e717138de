#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fruits/iss.hpp"
#include "fruits/prepare.hpp"
#include "fruits/sieve.hpp"
#include "fruits/time_series.hpp"

namespace fruits {

// Where a branch takes its words from.
struct MaxWeightWords {
    int max_weight = 1;
};
struct WordList {
    std::vector<std::string> words;
};
struct AlternatingWords {
    std::vector<std::pair<int, int>> dims;  // ordered (a, b) pairs
    int length = 1;
};
using WordSource = std::variant<MaxWeightWords, WordList, AlternatingWords>;

/// prep chain -> iterated sums -> sieves. `weightings` holds one entry per
/// weighting variant; each word is paired with each of them.
struct BranchConfig {
    PrepChain prep;
    Semiring semiring = Semiring::Real;
    IndexMode mode = IndexMode::Strict;
    std::vector<Weighting> weightings{NoWeighting{}};
    WordSource words = MaxWeightWords{1};
    std::vector<SieveSpec> sieves;
};

struct FruitConfig {
    std::string name = "custom";
    std::vector<BranchConfig> branches;
    /// When set, mean-of-positive-increments features divide by the mean
    /// training length instead of each sample's own length.
    bool fixed_mpi_length = false;
};

/// The seven sieves used by every branch of the general pipeline.
std::vector<SieveSpec> standard_sieves();

FruitConfig preset_general();
FruitConfig preset_twi();
FruitConfig preset_reduced(int real_weight, int arctic_length, int cosine_weight);

/// "general" or "twi". "reduced" needs explicit sizes, see preset_reduced.
FruitConfig preset_by_name(std::string_view name);
inline constexpr std::string_view kPresetNames = "general, twi, reduced";

FruitConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const FruitConfig& config);

/// Iterated-sum specs of a branch for inputs of `input_dims` dimensions,
/// in column order: word-major, then weighting.
std::vector<IssSpec> resolve_specs(const BranchConfig& branch, std::size_t input_dims);

std::size_t feature_count(const FruitConfig& config, std::size_t input_dims = 1);

struct ColumnInfo {
    std::size_t branch = 0;
    std::string word;
    std::string semiring;
    std::string mode;
    std::string weighting;
    std::string sieve;

    std::string label() const;
};

/// Samples x features, row-major.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;
    std::vector<ColumnInfo> columns;

    double operator()(std::size_t r, std::size_t c) const noexcept { return data[r * cols + c]; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data[r * cols + c]; }
};

struct FittedFruit {
    FruitConfig config;
    std::size_t input_dims = 1;
    std::vector<std::vector<IssSpec>> specs;     // per branch
    std::vector<std::optional<Window>> windows;  // per column
    std::optional<double> mpi_denominator;
    std::vector<ColumnInfo> columns;
};

struct RunOptions {
    std::size_t workers = 0;  // 0 = hardware concurrency
};

FittedFruit fit(const FruitConfig& config, const std::vector<TimeSeries>& train,
                const RunOptions& options = {});

/// fit followed by transform of the same data, computing every sum once.
std::pair<FittedFruit, FeatureMatrix> fit_transform(const FruitConfig& config,
                                                    const std::vector<TimeSeries>& train,
                                                    const RunOptions& options = {});

FeatureMatrix transform(const FittedFruit& fitted, const std::vector<TimeSeries>& data,
                        const RunOptions& options = {});

nlohmann::json fitted_to_json(const FittedFruit& fitted);
FittedFruit fitted_from_json(const nlohmann::json& j);

}  // namespace fruits
