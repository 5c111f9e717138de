#include "fruits/iss.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "fruits/error.hpp"

namespace fruits {

std::string_view to_string(IndexMode m) noexcept {
    return m == IndexMode::Strict ? "strict" : "nonstrict";
}

IndexMode index_mode_from_string(std::string_view name) {
    if (name == "strict") return IndexMode::Strict;
    if (name == "nonstrict" || name == "non_strict" || name == "non-strict")
        return IndexMode::NonStrict;
    throw Error(ErrorCode::ConfigError,
                "unknown index mode '" + std::string(name) + "' (expected strict or nonstrict)");
}

std::string_view to_string(ControlKind k) noexcept {
    switch (k) {
        case ControlKind::Id: return "id";
        case ControlKind::L1: return "l1";
        case ControlKind::L2: return "l2";
    }
    return "id";
}

ControlKind control_kind_from_string(std::string_view name) {
    if (name == "id") return ControlKind::Id;
    if (name == "l1" || name == "L1") return ControlKind::L1;
    if (name == "l2" || name == "L2") return ControlKind::L2;
    throw Error(ErrorCode::ConfigError,
                "unknown weighting control '" + std::string(name) + "' (expected id, l1 or l2)");
}

std::string describe(const Weighting& w) {
    std::ostringstream out;
    if (std::holds_alternative<NoWeighting>(w)) {
        out << "none";
    } else if (const auto* e = std::get_if<ExponentialWeighting>(&w)) {
        out << "exp(h=" << to_string(e->control) << ",scale=" << e->scale
            << ",outer=" << (e->include_outer ? 1 : 0) << ")";
    } else {
        const auto& c = std::get<CosineWeighting>(w);
        out << "cos(b=" << c.power << ",f=" << c.frequency << ")";
    }
    return out.str();
}

void validate(const IssSpec& spec, std::size_t dims) {
    const Word& w = spec.word;
    if (w.length() == 0) throw Error(ErrorCode::InvalidSpec, "empty word");
    if (static_cast<std::size_t>(w.max_dim()) > dims)
        throw Error(ErrorCode::DimensionOutOfRange,
                    "word " + format_word(w) + " uses dimension " + std::to_string(w.max_dim()) +
                        " but the input has " + std::to_string(dims));
    if (spec.semiring == Semiring::Real && w.has_negative_exponent())
        throw Error(ErrorCode::NegativeExponentInRealSemiring,
                    "word " + format_word(w) + " has negative exponents; only arctic sums allow them");

    if (const auto* e = std::get_if<ExponentialWeighting>(&spec.weighting)) {
        if (!(e->scale > 0.0) || e->scale > kMaxExponentialScale)
            throw Error(ErrorCode::InvalidSpec, "exponential weighting scale must lie in (0, 300]");
        if (spec.semiring == Semiring::Real && spec.mode == IndexMode::NonStrict)
            throw Error(ErrorCode::InvalidSpec,
                        "exponential weighting is not defined for non-strict real sums");
    } else if (const auto* c = std::get_if<CosineWeighting>(&spec.weighting)) {
        if (spec.semiring != Semiring::Real || spec.mode != IndexMode::Strict)
            throw Error(ErrorCode::InvalidSpec,
                        "cosine weighting requires the real semiring and strict indices");
        if (c->power < 1) throw Error(ErrorCode::InvalidSpec, "cosine power must be >= 1");
        if (!(c->frequency > 0.0) || c->frequency > 1.0)
            throw Error(ErrorCode::InvalidSpec, "cosine frequency must lie in (0, 1]");
    }
}

namespace {

template <class Ops>
void fill_letter(const TimeSeries& x, const ExtendedLetter& a, std::span<double> out) {
    const std::size_t T = x.length();
    const auto& factors = a.factors();
    if constexpr (std::is_same_v<Ops, RealOps>) {
        std::fill(out.begin(), out.end(), 1.0);
        for (const auto& f : factors) {
            auto row = x.row(static_cast<std::size_t>(f.dim - 1));
            for (std::size_t t = 0; t < T; ++t) {
                double p = row[t];
                for (int i = 1; i < f.exponent; ++i) p *= row[t];
                out[t] *= p;
            }
        }
    } else {
        std::fill(out.begin(), out.end(), 0.0);
        for (const auto& f : factors) {
            auto row = x.row(static_cast<std::size_t>(f.dim - 1));
            const double n = f.exponent;
            for (std::size_t t = 0; t < T; ++t) out[t] = ArcticOps::mul(out[t], n * row[t]);
        }
    }
}

template <class Ops>
void cumsum_inplace(std::span<double> z, int shift) {
    double acc = Ops::zero();
    if (shift == 0) {
        for (double& v : z) {
            acc = Ops::add(acc, v);
            v = acc;
        }
    } else {
        for (double& v : z) {
            const double next = Ops::add(acc, v);
            v = acc;
            acc = next;
        }
    }
}

// Nested cumulative sums: level(k, out) writes the (possibly transformed)
// letter series of level k. Inner levels use `inner_shift`, the outer level
// shift 0.
template <class Ops, class LevelFn>
std::vector<double> nested_sums(std::size_t T, std::size_t p, int inner_shift, LevelFn&& level) {
    std::vector<double> acc(T), buf(T);
    level(0, std::span<double>(acc));
    for (std::size_t k = 1; k < p; ++k) {
        cumsum_inplace<Ops>(acc, inner_shift);
        level(k, std::span<double>(buf));
        for (std::size_t t = 0; t < T; ++t) acc[t] = Ops::mul(acc[t], buf[t]);
    }
    cumsum_inplace<Ops>(acc, 0);
    return acc;
}

int inner_shift(IndexMode mode) { return mode == IndexMode::Strict ? 1 : 0; }

template <class Ops>
std::vector<double> plain_iss(const TimeSeries& x, const IssSpec& spec) {
    const auto& letters = spec.word.letters();
    return nested_sums<Ops>(x.length(), letters.size(), inner_shift(spec.mode),
                            [&](std::size_t k, std::span<double> out) {
                                fill_letter<Ops>(x, letters[k], out);
                            });
}

// Coefficient differences alpha_k - alpha_{k-1} (alpha_0 = 0) for inner
// coefficients 1 and the outer one 0 or 1.
std::vector<double> alpha_steps(std::size_t p, bool include_outer) {
    std::vector<double> alpha(p, 1.0);
    alpha[p - 1] = include_outer ? 1.0 : 0.0;
    std::vector<double> steps(p);
    double previous = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        steps[k] = alpha[k] - previous;
        previous = alpha[k];
    }
    return steps;
}

std::vector<double> weighting_exponent(const ExponentialWeighting& w, const TimeSeries& x,
                                       const TimeSeries* control) {
    const TimeSeries& source = control ? *control : x;
    if (source.length() != x.length())
        throw Error(ErrorCode::DimensionMismatch,
                    "weighting control series must have the same length as the input");
    std::vector<double> g = control_curve(w.control, source);
    for (double& v : g) v *= w.scale;
    return g;
}

void check_finite_input([[maybe_unused]] const TimeSeries& x) {
    assert(!x.has_nan() && "iterated sums expect NaN-free input");
}

}  // namespace

std::vector<double> letter_eval(const TimeSeries& x, const ExtendedLetter& a, Semiring s) {
    if (static_cast<std::size_t>(a.max_dim()) > x.dims())
        throw Error(ErrorCode::DimensionOutOfRange, "letter uses a dimension beyond the input");
    if (s == Semiring::Real && a.has_negative_exponent())
        throw Error(ErrorCode::NegativeExponentInRealSemiring,
                    "negative exponents are only defined in the arctic semiring");
    std::vector<double> out(x.length());
    if (s == Semiring::Real)
        fill_letter<RealOps>(x, a, out);
    else
        fill_letter<ArcticOps>(x, a, out);
    return out;
}

std::vector<double> cumsum_shift(std::span<const double> z, int shift, Semiring s) {
    if (shift < 0) throw Error(ErrorCode::InvalidSpec, "cumulative sum shift must be >= 0");
    const std::size_t T = z.size();
    std::vector<double> out(T, semiring::zero(s));
    double acc = semiring::zero(s);
    for (std::size_t t = static_cast<std::size_t>(shift); t < T; ++t) {
        acc = semiring::add(acc, z[t - static_cast<std::size_t>(shift)], s);
        out[t] = acc;
    }
    return out;
}

std::vector<double> control_curve(ControlKind kind, const TimeSeries& x) {
    const std::size_t T = x.length();
    std::vector<double> h(T);
    auto identity = [&] {
        for (std::size_t t = 0; t < T; ++t)
            h[t] = static_cast<double>(t + 1) / static_cast<double>(T);
    };
    if (kind == ControlKind::Id || T == 0) {
        identity();
        return h;
    }
    double total = 0.0;
    h[0] = 0.0;
    for (std::size_t t = 1; t < T; ++t) {
        double step = 0.0;
        for (std::size_t j = 0; j < x.dims(); ++j) {
            const double d = x(j, t) - x(j, t - 1);
            step += kind == ControlKind::L1 ? std::abs(d) : d * d;
        }
        total += step;
        h[t] = total;
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        identity();
        return h;
    }
    for (double& v : h) v /= total;
    return h;
}

double h_eval(ControlKind kind, std::size_t t, const TimeSeries& x) {
    if (t < 1 || t > x.length())
        throw Error(ErrorCode::InvalidSpec, "time index out of range for h");
    return control_curve(kind, x)[t - 1];
}

std::vector<double> weighted_iss_real(const TimeSeries& x, const IssSpec& spec,
                                      const TimeSeries* control) {
    const auto* w = std::get_if<ExponentialWeighting>(&spec.weighting);
    if (!w || spec.semiring != Semiring::Real || spec.mode != IndexMode::Strict)
        throw Error(ErrorCode::InvalidSpec,
                    "weighted_iss_real needs an exponential weighting over strict real sums");
    validate(spec, x.dims());
    check_finite_input(x);

    const auto& letters = spec.word.letters();
    const std::size_t p = letters.size();
    const std::vector<double> g = weighting_exponent(*w, x, control);
    const std::vector<double> steps = alpha_steps(p, w->include_outer);

    auto out = nested_sums<RealOps>(x.length(), p, 1, [&](std::size_t k, std::span<double> buf) {
        fill_letter<RealOps>(x, letters[k], buf);
        if (steps[k] != 0.0)
            for (std::size_t t = 0; t < buf.size(); ++t) buf[t] *= std::exp(steps[k] * g[t]);
    });
    if (w->include_outer)
        for (std::size_t t = 0; t < out.size(); ++t) out[t] *= std::exp(-g[t]);
    return out;
}

std::vector<double> weighted_iss_arctic(const TimeSeries& x, const IssSpec& spec,
                                        const TimeSeries* control) {
    const auto* w = std::get_if<ExponentialWeighting>(&spec.weighting);
    if (!w || spec.semiring != Semiring::Arctic)
        throw Error(ErrorCode::InvalidSpec,
                    "weighted_iss_arctic needs an exponential weighting over arctic sums");
    validate(spec, x.dims());
    check_finite_input(x);

    const auto& letters = spec.word.letters();
    const std::size_t p = letters.size();
    const std::vector<double> g = weighting_exponent(*w, x, control);
    const std::vector<double> steps = alpha_steps(p, w->include_outer);

    auto out = nested_sums<ArcticOps>(
        x.length(), p, inner_shift(spec.mode), [&](std::size_t k, std::span<double> buf) {
            fill_letter<ArcticOps>(x, letters[k], buf);
            if (steps[k] != 0.0)
                for (std::size_t t = 0; t < buf.size(); ++t)
                    buf[t] = ArcticOps::mul(buf[t], steps[k] * g[t]);
        });
    if (w->include_outer)
        for (std::size_t t = 0; t < out.size(); ++t) out[t] = ArcticOps::mul(out[t], -g[t]);
    return out;
}

std::size_t cosine_component_count(std::size_t word_length, int power) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < word_length; ++k) n *= static_cast<std::size_t>(power + 1);
    return n;
}

namespace {

// Expands every gap factor cos(a*(u - v))^b into the b+1 separable terms
//   C(b, j) * [cos(a u)^(b-j) sin(a u)^j] * [cos(a v)^(b-j) sin(a v)^j]
// and walks the resulting (b+1)^p plain strict sums depth-first, sharing the
// common prefixes of the component chains.
class CosineExpansion {
public:
    CosineExpansion(const TimeSeries& x, const IssSpec& spec, const CosineWeighting& w)
        : T_(x.length()), p_(spec.word.length()), b_(w.power) {
        const double alpha = std::numbers::pi / (w.frequency * static_cast<double>(T_));
        basis_.assign(static_cast<std::size_t>(b_ + 1), std::vector<double>(T_));
        for (std::size_t t = 0; t < T_; ++t) {
            const double c = std::cos(alpha * static_cast<double>(t + 1));
            const double s = std::sin(alpha * static_cast<double>(t + 1));
            for (int j = 0; j <= b_; ++j)
                basis_[j][t] = std::pow(c, b_ - j) * std::pow(s, j);
        }
        binomial_.resize(static_cast<std::size_t>(b_ + 1));
        binomial_[0] = 1.0;
        for (int j = 1; j <= b_; ++j) binomial_[j] = binomial_[j - 1] * (b_ - j + 1) / j;

        letters_.reserve(p_);
        for (const auto& a : spec.word.letters()) {
            std::vector<double> v(T_);
            fill_letter<RealOps>(x, a, v);
            letters_.push_back(std::move(v));
        }
        scratch_.assign(p_, std::vector<double>(T_));
    }

    std::vector<double> run() {
        result_.assign(T_, 0.0);
        components_ = 0;
        expand(0, letters_[0]);
        return result_;
    }

    std::size_t components() const noexcept { return components_; }

private:
    void expand(std::size_t level, const std::vector<double>& state) {
        std::vector<double>& cur = scratch_[level];
        for (int j = 0; j <= b_; ++j) {
            const auto& phi = basis_[j];
            for (std::size_t t = 0; t < T_; ++t) cur[t] = binomial_[j] * state[t] * phi[t];
            if (level + 1 == p_) {
                cumsum_inplace<RealOps>(cur, 0);
                for (std::size_t t = 0; t < T_; ++t) result_[t] += cur[t] * phi[t];
                ++components_;
            } else {
                cumsum_inplace<RealOps>(cur, 1);
                std::vector<double> next(T_);
                const auto& letter = letters_[level + 1];
                for (std::size_t t = 0; t < T_; ++t) next[t] = cur[t] * phi[t] * letter[t];
                expand(level + 1, next);
            }
        }
    }

    std::size_t T_;
    std::size_t p_;
    int b_;
    std::vector<std::vector<double>> basis_;
    std::vector<double> binomial_;
    std::vector<std::vector<double>> letters_;
    std::vector<std::vector<double>> scratch_;
    std::vector<double> result_;
    std::size_t components_ = 0;
};

}  // namespace

std::vector<double> cosine_iss(const TimeSeries& x, const IssSpec& spec) {
    const auto* w = std::get_if<CosineWeighting>(&spec.weighting);
    if (!w) throw Error(ErrorCode::InvalidSpec, "cosine_iss needs a cosine weighting");
    validate(spec, x.dims());
    check_finite_input(x);
    if (x.length() == 0) return {};
    CosineExpansion expansion(x, spec, *w);
    auto out = expansion.run();
    assert(expansion.components() == cosine_component_count(spec.word.length(), w->power));
    return out;
}

std::vector<double> iss(const TimeSeries& x, const IssSpec& spec, const TimeSeries* control) {
    validate(spec, x.dims());
    check_finite_input(x);
    if (x.length() == 0) return {};
    if (std::holds_alternative<ExponentialWeighting>(spec.weighting))
        return spec.semiring == Semiring::Real ? weighted_iss_real(x, spec, control)
                                               : weighted_iss_arctic(x, spec, control);
    if (std::holds_alternative<CosineWeighting>(spec.weighting)) return cosine_iss(x, spec);
    return spec.semiring == Semiring::Real ? plain_iss<RealOps>(x, spec)
                                           : plain_iss<ArcticOps>(x, spec);
}

}  // namespace fruits
