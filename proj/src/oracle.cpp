#include "fruits/oracle.hpp"

#include <cmath>
#include <numbers>

#include "fruits/error.hpp"

namespace fruits {

namespace {

// Letter value at one time step, computed straight from the monomial.
double monomial(const TimeSeries& x, const ExtendedLetter& a, std::size_t t, Semiring s) {
    double v = semiring::one(s);
    for (const auto& f : a.factors()) {
        const double base = x(static_cast<std::size_t>(f.dim - 1), t);
        if (s == Semiring::Real)
            v *= std::pow(base, f.exponent);
        else
            v += f.exponent * base;
    }
    return v;
}

// g(t) for the exponential weighting, recomputed here from its definition.
std::vector<double> control_values(const ExponentialWeighting& w, const TimeSeries& x) {
    const std::size_t T = x.length();
    std::vector<double> g(T);
    std::vector<double> cumulative(T, 0.0);
    for (std::size_t t = 1; t < T; ++t) {
        double step = 0.0;
        for (std::size_t j = 0; j < x.dims(); ++j) {
            const double d = x(j, t) - x(j, t - 1);
            step += w.control == ControlKind::L2 ? d * d : std::abs(d);
        }
        cumulative[t] = cumulative[t - 1] + step;
    }
    const double total = T ? cumulative[T - 1] : 0.0;
    const bool use_id = w.control == ControlKind::Id || !(total > 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        const double h = use_id ? static_cast<double>(t + 1) / static_cast<double>(T)
                                : cumulative[t] / total;
        g[t] = w.scale * h;
    }
    return g;
}

struct Enumerator {
    const TimeSeries& x;
    const IssSpec& spec;
    std::vector<double> g;
    std::size_t end = 0;  // evaluation time, 0-based
    std::vector<std::size_t> tuple;
    double total = 0.0;

    double weight_of_tuple() const {
        const std::size_t p = tuple.size();
        if (const auto* e = std::get_if<ExponentialWeighting>(&spec.weighting)) {
            // alpha_1..alpha_{p-1} = 1, alpha_p in {0, 1}
            double exponent = 0.0;
            for (std::size_t k = 0; k + 1 < p; ++k) exponent += g[tuple[k]] - g[tuple[k + 1]];
            if (e->include_outer) exponent += g[tuple[p - 1]] - g[end];
            return spec.semiring == Semiring::Real ? std::exp(exponent) : exponent;
        }
        if (const auto* c = std::get_if<CosineWeighting>(&spec.weighting)) {
            const double alpha =
                std::numbers::pi / (c->frequency * static_cast<double>(x.length()));
            double w = 1.0;
            for (std::size_t k = 0; k + 1 < p; ++k)
                w *= std::pow(std::cos(alpha * (static_cast<double>(tuple[k]) -
                                                static_cast<double>(tuple[k + 1]))),
                              c->power);
            w *= std::pow(std::cos(alpha * (static_cast<double>(tuple[p - 1]) -
                                            static_cast<double>(end))),
                          c->power);
            return w;
        }
        return semiring::one(spec.semiring);
    }

    void visit(std::size_t level, std::size_t lowest) {
        const std::size_t p = spec.word.length();
        if (level == p) {
            const Semiring s = spec.semiring;
            double term = weight_of_tuple();
            for (std::size_t k = 0; k < p; ++k)
                term = semiring::mul(term, monomial(x, spec.word.letters()[k], tuple[k], s), s);
            total = semiring::add(total, term, s);
            return;
        }
        for (std::size_t t = lowest; t <= end; ++t) {
            tuple[level] = t;
            visit(level + 1, spec.mode == IndexMode::Strict ? t + 1 : t);
        }
    }
};

}  // namespace

std::vector<double> iss_brute(const TimeSeries& x, const IssSpec& spec, const TimeSeries* control) {
    validate(spec, x.dims());
    const std::size_t p = spec.word.length();
    const std::size_t T = x.length();
    if (p > kOracleMaxWordLength || T > kOracleMaxLength)
        throw Error(ErrorCode::OracleTooLarge, "brute-force enumeration limited to p <= 6, T <= 64");

    Enumerator e{x, spec, {}, 0, std::vector<std::size_t>(p), 0.0};
    if (const auto* w = std::get_if<ExponentialWeighting>(&spec.weighting))
        e.g = control_values(*w, control ? *control : x);

    std::vector<double> out(T);
    for (std::size_t t = 0; t < T; ++t) {
        e.end = t;
        e.total = semiring::zero(spec.semiring);
        e.visit(0, 0);
        out[t] = e.total;
    }
    return out;
}

}  // namespace fruits
