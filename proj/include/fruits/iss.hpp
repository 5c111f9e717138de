#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fruits/semiring.hpp"
#include "fruits/time_series.hpp"
#include "fruits/words.hpp"

namespace fruits {

/// Whether index tuples satisfy t_1 < ... < t_p or t_1 <= ... <= t_p.
enum class IndexMode { Strict, NonStrict };

std::string_view to_string(IndexMode m) noexcept;
IndexMode index_mode_from_string(std::string_view name);

/// Normalised time control h(t, x) in [0, 1] used by the exponential weighting.
///   Id : t / T
///   L1 : cumulative absolute increments over their total
///   L2 : cumulative squared increments over their total
enum class ControlKind { Id, L1, L2 };

std::string_view to_string(ControlKind k) noexcept;
ControlKind control_kind_from_string(std::string_view name);

struct NoWeighting {
    friend bool operator==(const NoWeighting&, const NoWeighting&) = default;
};

/// Penalises index tuples by the time range they cover, with
/// g(t) = scale * h(t, x). Inner coefficients are fixed to 1; the outer
/// coefficient is 1 when `include_outer`, else 0.
struct ExponentialWeighting {
    ControlKind control = ControlKind::Id;
    double scale = 50.0;
    bool include_outer = false;

    friend bool operator==(const ExponentialWeighting&, const ExponentialWeighting&) = default;
};

/// Gap factors cos(alpha * (t_k - t_{k+1}))^power with alpha = pi / (frequency * T),
/// including the outer gap to the evaluation time.
struct CosineWeighting {
    int power = 1;
    double frequency = 1.0;

    friend bool operator==(const CosineWeighting&, const CosineWeighting&) = default;
};

using Weighting = std::variant<NoWeighting, ExponentialWeighting, CosineWeighting>;

std::string describe(const Weighting& w);

/// Everything needed to evaluate one iterated sum.
struct IssSpec {
    Word word;
    Semiring semiring = Semiring::Real;
    IndexMode mode = IndexMode::Strict;
    Weighting weighting = NoWeighting{};
};

/// Largest exponential scale the engine accepts; e^300 stays far from overflow.
inline constexpr double kMaxExponentialScale = 300.0;

/// Throws if the combination is not supported or the word does not fit `dims`.
void validate(const IssSpec& spec, std::size_t dims);

/// Entry t is the semiring product of pow(x_t^[j], n) over the letter's factors.
std::vector<double> letter_eval(const TimeSeries& x, const ExtendedLetter& a, Semiring s);

/// Entry t is zero for t < r (0-based), else the semiring sum of z_0..z_{t-r}.
std::vector<double> cumsum_shift(std::span<const double> z, int shift, Semiring s);

/// h(t, x) for every t (0-based index, so h[T-1] == 1). Constant inputs fall
/// back to the Id control.
std::vector<double> control_curve(ControlKind kind, const TimeSeries& x);

/// Single-point version with a 1-based time index.
double h_eval(ControlKind kind, std::size_t t, const TimeSeries& x);

/// Linear-time iterated sum. `control`, when given, is the series the
/// exponential weighting's h is computed on; it defaults to `x` and must
/// have the same length.
std::vector<double> iss(const TimeSeries& x, const IssSpec& spec,
                        const TimeSeries* control = nullptr);

// The weighted paths, callable directly. Each validates its preconditions.
std::vector<double> weighted_iss_real(const TimeSeries& x, const IssSpec& spec,
                                      const TimeSeries* control = nullptr);
std::vector<double> weighted_iss_arctic(const TimeSeries& x, const IssSpec& spec,
                                        const TimeSeries* control = nullptr);
std::vector<double> cosine_iss(const TimeSeries& x, const IssSpec& spec);

/// Number of plain iterated sums the cosine expansion is made of.
std::size_t cosine_component_count(std::size_t word_length, int power);

}  // namespace fruits
