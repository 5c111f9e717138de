#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "fruits/data.hpp"
#include "fruits/prepare.hpp"

namespace fruits::test {

/// Two classes: "A" is a standardised sine with random phase and frequency,
/// "B" the same sine plus a linear trend. Gaussian noise of sigma 0.1 is
/// added afterwards. Classes alternate A, B, A, ...
inline LabeledDataset sine_trend(std::size_t n, std::size_t length, std::uint64_t seed) {
    PortableRng rng(seed);
    LabeledDataset out;
    for (std::size_t i = 0; i < n; ++i) {
        const bool trend = i % 2 == 1;
        const double phase = 2 * std::numbers::pi * rng.uniform();
        const double freq = 2.0 + 2.0 * rng.uniform();
        TimeSeries x(1, length);
        for (std::size_t t = 0; t < length; ++t)
            x(0, t) = std::sin(2 * std::numbers::pi * freq * static_cast<double>(t) /
                                   static_cast<double>(length) + phase);
        x = standardize(x);
        for (std::size_t t = 0; t < length; ++t) {
            if (trend) x(0, t) += 2.0 * static_cast<double>(t) / static_cast<double>(length);
            x(0, t) += 0.1 * rng.normal();
        }
        out.samples.push_back(std::move(x));
        out.labels.push_back(trend ? "B" : "A");
    }
    return out;
}

inline std::string to_ucr_text(const LabeledDataset& d) {
    std::string text;
    char buf[32];
    for (std::size_t i = 0; i < d.size(); ++i) {
        text += d.labels[i];
        for (double v : d.samples[i].row(0)) {
            std::snprintf(buf, sizeof buf, "\t%.17g", v);
            text += buf;
        }
        text += "\n";
    }
    return text;
}

}  // namespace fruits::test
