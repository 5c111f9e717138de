#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fruits/iss.hpp"
#include "fruits/time_series.hpp"

namespace fruits {

enum class SieveKind { End, CoQuantile, Npi, Mpi };

/// One scalar feature extractor applied to an iterated-sum series.
/// Text form: "end", "coq:<q>", "npi:<k>:<al>:<ar>", "mpi:<k>:<al>:<ar>".
struct SieveSpec {
    SieveKind kind = SieveKind::End;
    double q = 0.0;        // coquantile level
    int order = 0;         // k, the increment order for npi / mpi
    double alpha_l = 0.5;  // window quantile levels for npi / mpi
    double alpha_r = 1.0;

    bool needs_window() const noexcept { return kind == SieveKind::Npi || kind == SieveKind::Mpi; }

    friend bool operator==(const SieveSpec&, const SieveSpec&) = default;
};

inline constexpr int kMaxIncrementOrder = 3;

SieveSpec parse_sieve(std::string_view text);
std::string format_sieve(const SieveSpec& s);

/// Half-open window (lower, upper] on k-th increments.
struct Window {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    friend bool operator==(const Window&, const Window&) = default;
};

double sieve_end(std::span<const double> z);

/// Largest 1-based t whose cumulative increment ratio under `control` is at
/// most q. q = 0 gives 1, q = 1 gives T, constant inputs give T.
std::size_t coquantile_index(const TimeSeries& x, double q, ControlKind control = ControlKind::L1);

/// Empirical quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double level);

/// q_l is the alpha_l quantile of the pool, q_r the alpha_r quantile or +inf
/// when alpha_r == 1. Throws EmptyPool.
Window fit_window(std::vector<double> pool, double alpha_l, double alpha_r);

/// The increment operator applied k times (each application sets entry 0 to 0).
std::vector<double> kth_increments(std::span<const double> z, int k);

/// Number of t with max(q_l, 0) < delta^k z_t <= q_r. Only positive
/// increments are ever counted, so the zero increments a repeated value
/// produces never enter the feature.
double sieve_npi(std::span<const double> z, int k, const Window& window = {});

/// Sum of the increments counted by sieve_npi divided by `denominator`
/// (default: the series length).
double sieve_mpi(std::span<const double> z, int k, const Window& window = {},
                 std::optional<double> denominator = std::nullopt);

}  // namespace fruits
