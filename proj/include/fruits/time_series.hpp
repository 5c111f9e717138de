#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fruits {

/// A d-dimensional series of length T stored dimension-major, so each
/// dimension is a contiguous span. Time indices are 0-based here; the
/// 1-based convention only appears in words and index traces.
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(std::size_t dims, std::size_t length, double fill = 0.0);
    /// Univariate series from values.
    TimeSeries(std::initializer_list<double> values);
    static TimeSeries univariate(std::vector<double> values);
    /// One inner vector per dimension; all must share a length.
    static TimeSeries from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t dims() const noexcept { return dims_; }
    std::size_t length() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }

    double& operator()(std::size_t dim, std::size_t t) noexcept { return data_[dim * length_ + t]; }
    double operator()(std::size_t dim, std::size_t t) const noexcept {
        return data_[dim * length_ + t];
    }

    std::span<double> row(std::size_t dim) noexcept {
        return {data_.data() + dim * length_, length_};
    }
    std::span<const double> row(std::size_t dim) const noexcept {
        return {data_.data() + dim * length_, length_};
    }

    /// The first `t` time steps.
    TimeSeries prefix(std::size_t t) const;

    bool has_nan() const noexcept;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::size_t dims_ = 0;
    std::size_t length_ = 0;
    std::vector<double> data_;
};

}  // namespace fruits
