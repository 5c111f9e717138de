#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fruits/time_series.hpp"

namespace fruits {

/// Raw samples (possibly ragged, possibly NaN) with opaque string labels.
struct LabeledDataset {
    std::vector<TimeSeries> samples;
    std::vector<std::string> labels;

    std::size_t size() const noexcept { return samples.size(); }
};

enum class Delimiter { Auto, Tab, Comma };

/// UCR-style text file: one sample per line, label first, then the values.
/// "NaN" and empty fields become NaN. Auto picks tab when the first data
/// line contains one, else comma.
LabeledDataset load_ucr(const std::filesystem::path& path, Delimiter delimiter = Delimiter::Auto);

/// std::mt19937_64 is fully specified by the standard but its distributions
/// are not; these draws are derived by hand so sequences match everywhere.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed);
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();

private:
    std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream index (splitmix64), for per-sample seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Duplicates round(proportion * T) time steps drawn uniformly with
/// replacement; each duplicate is inserted right after its original.
TimeSeries stutter(const TimeSeries& x, double proportion, std::uint64_t seed);

/// Appends the last time step k more times.
TimeSeries lengthen_tail(const TimeSeries& x, std::size_t k);

}  // namespace fruits
