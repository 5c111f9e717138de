#include "fruits/argmax.hpp"

#include "fruits/error.hpp"
#include "fruits/iss.hpp"
#include "fruits/semiring.hpp"

namespace fruits {

std::vector<std::size_t> ArgmaxTrace::tuple_at(std::size_t t) const {
    std::vector<std::size_t> tuple;
    tuple.reserve(indices.size());
    for (const auto& row : indices) tuple.push_back(row.at(t - 1));
    return tuple;
}

ArgmaxTrace arctic_iss_with_indices(const TimeSeries& x, const Word& w) {
    if (static_cast<std::size_t>(w.max_dim()) > x.dims())
        throw Error(ErrorCode::DimensionOutOfRange, "word uses a dimension beyond the input");
    const std::size_t T = x.length();
    const std::size_t p = w.length();

    ArgmaxTrace trace;
    // Start from the multiplicative identity so the first level is the
    // running maximum of the first letter.
    trace.values.assign(T, ArcticOps::one());
    trace.indices.assign(p, std::vector<std::size_t>(T, 1));
    if (T == 0) {
        trace.forward_indices = trace.indices;
        return trace;
    }

    auto& z = trace.values;
    for (std::size_t k = 0; k < p; ++k) {
        const auto letter = letter_eval(x, w.letters()[k], Semiring::Arctic);
        for (std::size_t t = 0; t < T; ++t) z[t] = ArcticOps::mul(z[t], letter[t]);
        auto& J = trace.indices[k];
        for (std::size_t t = 1; t < T; ++t) {
            if (z[t - 1] >= z[t]) {
                z[t] = z[t - 1];
                J[t] = J[t - 1];
            } else {
                J[t] = t + 1;
            }
        }
    }
    trace.forward_indices = trace.indices;

    for (std::size_t k = p; k >= 2; --k) {
        const std::size_t anchor = trace.indices[k - 1][T - 1];
        auto& previous = trace.indices[k - 2];
        for (std::size_t t = anchor; t < T; ++t) previous[t] = previous[anchor - 1];
    }
    return trace;
}

double evaluate_at(const TimeSeries& x, const Word& w, const std::vector<std::size_t>& tuple) {
    if (tuple.size() != w.length())
        throw Error(ErrorCode::ShapeMismatch, "index tuple length differs from word length");
    double v = ArcticOps::one();
    for (std::size_t k = 0; k < tuple.size(); ++k) {
        if (tuple[k] < 1 || tuple[k] > x.length())
            throw Error(ErrorCode::InvalidSpec, "index tuple entry out of range");
        for (const auto& f : w.letters()[k].factors())
            v = ArcticOps::mul(v, f.exponent * x(static_cast<std::size_t>(f.dim - 1), tuple[k] - 1));
    }
    return v;
}

}  // namespace fruits
