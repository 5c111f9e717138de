#include "fruits/sieve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fruits/error.hpp"

namespace fruits {

namespace {

double parse_number(std::string_view text, std::string_view context) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error(ErrorCode::ConfigError,
                    "bad number '" + std::string(text) + "' in sieve '" + std::string(context) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

SieveSpec parse_sieve(std::string_view text) {
    const auto parts = split(text, ':');
    SieveSpec s;
    const auto& name = parts[0];
    if (name == "end" && parts.size() == 1) {
        s.kind = SieveKind::End;
        return s;
    }
    if (name == "coq" && parts.size() == 2) {
        s.kind = SieveKind::CoQuantile;
        s.q = parse_number(parts[1], text);
        if (!(s.q >= 0.0 && s.q <= 1.0))
            throw Error(ErrorCode::ConfigError, "coquantile level must lie in [0, 1]");
        return s;
    }
    if ((name == "npi" || name == "mpi") && parts.size() == 4) {
        s.kind = name == "npi" ? SieveKind::Npi : SieveKind::Mpi;
        const double k = parse_number(parts[1], text);
        s.alpha_l = parse_number(parts[2], text);
        s.alpha_r = parse_number(parts[3], text);
        if (k != std::floor(k) || k < 0 || k > kMaxIncrementOrder)
            throw Error(ErrorCode::ConfigError, "increment order must be 0, 1, 2 or 3");
        s.order = static_cast<int>(k);
        if (!(0.0 <= s.alpha_l && s.alpha_l < s.alpha_r && s.alpha_r <= 1.0))
            throw Error(ErrorCode::ConfigError, "window levels need 0 <= al < ar <= 1");
        return s;
    }
    throw Error(ErrorCode::ConfigError,
                "unknown sieve '" + std::string(text) +
                    "' (expected end, coq:<q>, npi:<k>:<al>:<ar> or mpi:<k>:<al>:<ar>)");
}

std::string format_sieve(const SieveSpec& s) {
    switch (s.kind) {
        case SieveKind::End: return "end";
        case SieveKind::CoQuantile: return "coq:" + format_number(s.q);
        case SieveKind::Npi:
        case SieveKind::Mpi:
            return std::string(s.kind == SieveKind::Npi ? "npi:" : "mpi:") +
                   std::to_string(s.order) + ":" + format_number(s.alpha_l) + ":" +
                   format_number(s.alpha_r);
    }
    return "";
}

double sieve_end(std::span<const double> z) {
    if (z.empty()) throw Error(ErrorCode::InvalidSpec, "cannot sieve an empty series");
    return z.back();
}

std::size_t coquantile_index(const TimeSeries& x, double q, ControlKind control) {
    const std::size_t T = x.length();
    if (T == 0) throw Error(ErrorCode::InvalidSpec, "cannot cut an empty series");
    if (q <= 0.0) return 1;
    if (q >= 1.0) return T;

    std::vector<double> cumulative(T, 0.0);
    for (std::size_t t = 1; t < T; ++t) {
        double step = 0.0;
        for (std::size_t j = 0; j < x.dims(); ++j) {
            const double d = x(j, t) - x(j, t - 1);
            step += control == ControlKind::L2 ? d * d : std::abs(d);
        }
        cumulative[t] = cumulative[t - 1] + step;
    }
    const double total = cumulative[T - 1];
    if (control == ControlKind::Id)
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(q * static_cast<double>(T))));
    if (!(total > 0.0)) return T;

    std::size_t best = 1;
    for (std::size_t t = 0; t < T; ++t)
        if (cumulative[t] / total <= q) best = t + 1;
    return best;
}

double quantile(std::vector<double> values, double level) {
    if (values.empty()) throw Error(ErrorCode::EmptyPool, "quantile of an empty pool");
    level = std::clamp(level, 0.0, 1.0);
    const double pos = level * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(lo), values.end());
    const double a = values[lo];
    if (frac == 0.0 || lo + 1 >= values.size()) return a;
    const double b = *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(lo) + 1, values.end());
    return a + frac * (b - a);
}

Window fit_window(std::vector<double> pool, double alpha_l, double alpha_r) {
    if (pool.empty()) throw Error(ErrorCode::EmptyPool, "cannot fit a window on an empty pool");
    if (!(0.0 <= alpha_l && alpha_l < alpha_r && alpha_r <= 1.0))
        throw Error(ErrorCode::InvalidSpec, "window levels need 0 <= al < ar <= 1");
    Window w;
    if (alpha_r < 1.0) w.upper = quantile(pool, alpha_r);
    w.lower = quantile(std::move(pool), alpha_l);
    return w;
}

std::vector<double> kth_increments(std::span<const double> z, int k) {
    std::vector<double> d(z.begin(), z.end());
    for (int i = 0; i < k; ++i) {
        for (std::size_t t = d.size(); t-- > 1;) d[t] -= d[t - 1];
        if (!d.empty()) d[0] = 0.0;
    }
    return d;
}

namespace {

template <class Fn>
void for_each_counted(std::span<const double> z, int k, const Window& window, Fn&& fn) {
    const double lower = std::max(window.lower, 0.0);
    if (k == 0) {
        for (double v : z)
            if (v > lower && v <= window.upper) fn(v);
        return;
    }
    for (double v : kth_increments(z, k))
        if (v > lower && v <= window.upper) fn(v);
}

}  // namespace

double sieve_npi(std::span<const double> z, int k, const Window& window) {
    std::size_t count = 0;
    for_each_counted(z, k, window, [&](double) { ++count; });
    return static_cast<double>(count);
}

double sieve_mpi(std::span<const double> z, int k, const Window& window,
                 std::optional<double> denominator) {
    if (z.empty()) return 0.0;
    double sum = 0.0;
    for_each_counted(z, k, window, [&](double v) { sum += v; });
    return sum / denominator.value_or(static_cast<double>(z.size()));
}

}  // namespace fruits
