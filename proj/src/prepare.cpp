#include "fruits/prepare.hpp"

#include <cmath>
#include <string>

#include "fruits/error.hpp"

namespace fruits {

namespace {
constexpr double kFlatSigma = 1e-12;
}

std::string_view to_string(PrepStep step) noexcept {
    switch (step) {
        case PrepStep::NanFill: return "nan_fill";
        case PrepStep::Std: return "std";
        case PrepStep::Inc: return "inc";
        case PrepStep::IncLift: return "inc_lift";
    }
    return "";
}

PrepStep prep_step_from_string(std::string_view name) {
    if (name == "nan_fill") return PrepStep::NanFill;
    if (name == "std") return PrepStep::Std;
    if (name == "inc") return PrepStep::Inc;
    if (name == "inc_lift") return PrepStep::IncLift;
    throw Error(ErrorCode::ConfigError, "unknown preparateur '" + std::string(name) +
                                            "' (expected nan_fill, std, inc or inc_lift)");
}

TimeSeries nan_fill(const TimeSeries& x) {
    TimeSeries out = x;
    for (std::size_t j = 0; j < out.dims(); ++j) {
        double last = 0.0;
        for (double& v : out.row(j)) {
            if (std::isnan(v))
                v = last;
            else
                last = v;
        }
    }
    return out;
}

TimeSeries standardize(const TimeSeries& x) {
    TimeSeries out = x;
    const double n = static_cast<double>(x.length());
    for (std::size_t j = 0; j < out.dims(); ++j) {
        auto row = out.row(j);
        if (row.empty()) continue;
        double mean = 0.0;
        for (double v : row) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : row) var += (v - mean) * (v - mean);
        const double sigma = std::sqrt(var / n);
        if (sigma < kFlatSigma) {
            std::fill(row.begin(), row.end(), 0.0);
            continue;
        }
        for (double& v : row) v = (v - mean) / sigma;
    }
    return out;
}

TimeSeries increments(const TimeSeries& x) {
    TimeSeries out(x.dims(), x.length());
    for (std::size_t j = 0; j < x.dims(); ++j) {
        auto src = x.row(j);
        auto dst = out.row(j);
        for (std::size_t t = 1; t < src.size(); ++t) dst[t] = src[t] - src[t - 1];
    }
    return out;
}

TimeSeries inc_lift(const TimeSeries& x) {
    if (x.dims() != 1)
        throw Error(ErrorCode::NotUnivariate, "inc_lift expects a univariate series, got " +
                                                  std::to_string(x.dims()) + " dimensions");
    TimeSeries out(2, x.length());
    auto src = x.row(0);
    std::copy(src.begin(), src.end(), out.row(0).begin());
    auto inc = out.row(1);
    for (std::size_t t = 1; t < src.size(); ++t) inc[t] = src[t] - src[t - 1];
    return out;
}

TimeSeries apply_step(PrepStep step, const TimeSeries& x) {
    switch (step) {
        case PrepStep::NanFill: return nan_fill(x);
        case PrepStep::Std: return standardize(x);
        case PrepStep::Inc: return increments(x);
        case PrepStep::IncLift: return inc_lift(x);
    }
    return x;
}

TimeSeries apply_chain(const PrepChain& chain, const TimeSeries& x) {
    TimeSeries out = x;
    for (PrepStep step : chain) out = apply_step(step, out);
    return out;
}

std::size_t output_dims(const PrepChain& chain, std::size_t input_dims) {
    std::size_t d = input_dims;
    for (PrepStep step : chain) {
        if (step != PrepStep::IncLift) continue;
        if (d != 1) throw Error(ErrorCode::NotUnivariate, "inc_lift expects a univariate series");
        d = 2;
    }
    return d;
}

}  // namespace fruits
