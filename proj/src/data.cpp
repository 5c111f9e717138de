#include "fruits/data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "fruits/error.hpp"

namespace fruits {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_value(std::string_view field, bool& ok) {
    field = trim(field);
    ok = true;
    if (field.empty() || field == "NaN" || field == "nan" || field == "NAN" || field == "?")
        return std::numeric_limits<double>::quiet_NaN();
    if (field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    ok = ec == std::errc() && ptr == field.data() + field.size();
    return v;
}

}  // namespace

LabeledDataset load_ucr(const std::filesystem::path& path, Delimiter delimiter) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());

    LabeledDataset data;
    std::string line;
    std::size_t line_no = 0;
    char sep = delimiter == Delimiter::Tab ? '\t' : ',';
    bool decided = delimiter != Delimiter::Auto;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        if (!decided) {
            sep = view.find('\t') != std::string_view::npos ? '\t' : ',';
            decided = true;
        }
        std::vector<double> values;
        std::string label;
        std::size_t start = 0;
        bool first = true;
        while (true) {
            const std::size_t pos = view.find(sep, start);
            const std::string_view field = view.substr(start, pos == std::string_view::npos ? pos : pos - start);
            if (first) {
                label = std::string(trim(field));
                if (label.empty())
                    throw Error(ErrorCode::MalformedLine,
                                path.string() + ":" + std::to_string(line_no) + ": missing label");
                first = false;
            } else {
                bool ok = false;
                const double v = parse_value(field, ok);
                if (!ok)
                    throw Error(ErrorCode::MalformedLine,
                                path.string() + ":" + std::to_string(line_no) + ": bad value '" +
                                    std::string(field) + "'");
                values.push_back(v);
            }
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
        if (values.empty())
            throw Error(ErrorCode::MalformedLine,
                        path.string() + ":" + std::to_string(line_no) + ": no values after the label");
        data.samples.push_back(TimeSeries::univariate(std::move(values)));
        data.labels.push_back(std::move(label));
    }
    if (data.samples.empty()) throw Error(ErrorCode::EmptyDataset, path.string() + " holds no samples");
    return data;
}

PortableRng::PortableRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t PortableRng::below(std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidSpec, "empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

double PortableRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PortableRng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TimeSeries stutter(const TimeSeries& x, double proportion, std::uint64_t seed) {
    if (proportion < 0.0) throw Error(ErrorCode::InvalidSpec, "stutter proportion must be >= 0");
    const std::size_t T = x.length();
    const auto k = static_cast<std::size_t>(std::llround(proportion * static_cast<double>(T)));
    if (k == 0 || T == 0) return x;

    std::vector<std::size_t> repeats(T, 0);
    PortableRng rng(seed);
    for (std::size_t i = 0; i < k; ++i) ++repeats[rng.below(T)];

    TimeSeries out(x.dims(), T + k);
    for (std::size_t j = 0; j < x.dims(); ++j) {
        auto src = x.row(j);
        auto dst = out.row(j);
        std::size_t pos = 0;
        for (std::size_t t = 0; t < T; ++t)
            for (std::size_t r = 0; r <= repeats[t]; ++r) dst[pos++] = src[t];
    }
    return out;
}

TimeSeries lengthen_tail(const TimeSeries& x, std::size_t k) {
    if (k == 0 || x.length() == 0) return x;
    TimeSeries out(x.dims(), x.length() + k);
    for (std::size_t j = 0; j < x.dims(); ++j) {
        auto src = x.row(j);
        auto dst = out.row(j);
        std::copy(src.begin(), src.end(), dst.begin());
        std::fill(dst.begin() + static_cast<std::ptrdiff_t>(src.size()), dst.end(), src.back());
    }
    return out;
}

}  // namespace fruits
