#pragma once

#include <cstddef>
#include <vector>

#include "fruits/time_series.hpp"
#include "fruits/words.hpp"

namespace fruits {

/// Non-strict arctic iterated sum together with the index tuple attaining
/// the running maximum. Index rows are 1-based time indices, one row per
/// letter of the word.
struct ArgmaxTrace {
    std::vector<double> values;
    /// Rows after the backward correction pass.
    std::vector<std::vector<std::size_t>> indices;
    /// Rows as left by the forward pass, before correction.
    std::vector<std::vector<std::size_t>> forward_indices;

    /// (J^(1)_t, ..., J^(p)_t) for a 1-based time t.
    std::vector<std::size_t> tuple_at(std::size_t t) const;
};

/// Linear-time forward/backward scan. Ties keep the earlier index.
ArgmaxTrace arctic_iss_with_indices(const TimeSeries& x, const Word& w);

/// Arctic value of the word at a given 1-based index tuple.
double evaluate_at(const TimeSeries& x, const Word& w, const std::vector<std::size_t>& tuple);

}  // namespace fruits
