#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fruits/time_series.hpp"

namespace fruits {

/// Preparateurs applied before the iterated sums.
enum class PrepStep { NanFill, Std, Inc, IncLift };

std::string_view to_string(PrepStep step) noexcept;
PrepStep prep_step_from_string(std::string_view name);

using PrepChain = std::vector<PrepStep>;

/// Replaces each NaN by the last non-NaN value of its dimension; NaNs before
/// the first recorded value become 0.
TimeSeries nan_fill(const TimeSeries& x);

/// Per-dimension (x - mean) / sigma with the population sigma. Dimensions
/// with sigma below 1e-12 become all zeros.
TimeSeries standardize(const TimeSeries& x);

/// (0, x_2 - x_1, x_3 - x_2, ...) per dimension.
TimeSeries increments(const TimeSeries& x);

/// Univariate x -> rows (x, increments(x)). Throws NotUnivariate otherwise.
TimeSeries inc_lift(const TimeSeries& x);

TimeSeries apply_step(PrepStep step, const TimeSeries& x);

/// Applies the chain left to right.
TimeSeries apply_chain(const PrepChain& chain, const TimeSeries& x);

/// Dimension after the chain, given the input dimension. Throws NotUnivariate
/// when an IncLift meets multivariate data.
std::size_t output_dims(const PrepChain& chain, std::size_t input_dims);

}  // namespace fruits
