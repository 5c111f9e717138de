#include "fruits/time_series.hpp"

#include <algorithm>
#include <cmath>

#include "fruits/error.hpp"

namespace fruits {

TimeSeries::TimeSeries(std::size_t dims, std::size_t length, double fill)
    : dims_(dims), length_(length), data_(dims * length, fill) {}

TimeSeries::TimeSeries(std::initializer_list<double> values)
    : dims_(1), length_(values.size()), data_(values) {}

TimeSeries TimeSeries::univariate(std::vector<double> values) {
    TimeSeries x;
    x.dims_ = 1;
    x.length_ = values.size();
    x.data_ = std::move(values);
    return x;
}

TimeSeries TimeSeries::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    TimeSeries x(rows.size(), rows.front().size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != x.length_)
            throw Error(ErrorCode::DimensionMismatch, "all dimensions must have the same length");
        std::copy(rows[j].begin(), rows[j].end(), x.row(j).begin());
    }
    return x;
}

TimeSeries TimeSeries::prefix(std::size_t t) const {
    t = std::min(t, length_);
    TimeSeries out(dims_, t);
    for (std::size_t j = 0; j < dims_; ++j) {
        auto src = row(j);
        std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(t), out.row(j).begin());
    }
    return out;
}

bool TimeSeries::has_nan() const noexcept {
    return std::any_of(data_.begin(), data_.end(), [](double v) { return std::isnan(v); });
}

}  // namespace fruits
