#include "fruits/semiring.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "fruits/error.hpp"

namespace fruits {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NegativeExponentInRealSemiring: return "NegativeExponentInRealSemiring";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
        case ErrorCode::ZeroExponent: return "ZeroExponent";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::OracleTooLarge: return "OracleTooLarge";
        case ErrorCode::NotUnivariate: return "NotUnivariate";
        case ErrorCode::EmptyPool: return "EmptyPool";
        case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SingleClass: return "SingleClass";
        case ErrorCode::EmptyFeatures: return "EmptyFeatures";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

std::string_view to_string(Semiring s) noexcept {
    return s == Semiring::Real ? "real" : "arctic";
}

Semiring semiring_from_string(std::string_view name) {
    if (name == "real") return Semiring::Real;
    if (name == "arctic") return Semiring::Arctic;
    throw Error(ErrorCode::ConfigError,
                "unknown semiring '" + std::string(name) + "' (expected real or arctic)");
}

namespace semiring {

double zero(Semiring s) noexcept {
    return s == Semiring::Real ? RealOps::zero() : ArcticOps::zero();
}

double one(Semiring s) noexcept {
    return s == Semiring::Real ? RealOps::one() : ArcticOps::one();
}

double add(double a, double b, Semiring s) noexcept {
    return s == Semiring::Real ? RealOps::add(a, b) : ArcticOps::add(a, b);
}

double mul(double a, double b, Semiring s) noexcept {
    const double r = s == Semiring::Real ? RealOps::mul(a, b) : ArcticOps::mul(a, b);
    assert(!(s == Semiring::Arctic && std::isnan(r)));
    return r;
}

double pow(double a, int n, Semiring s) {
    if (n == 0) throw Error(ErrorCode::InvalidSpec, "exponent must be nonzero");
    if (s == Semiring::Arctic) {
        if (a == ArcticOps::zero()) {
            if (n < 0)
                throw Error(ErrorCode::InvalidSpec,
                            "negative power of the arctic bottom element is undefined");
            return a;
        }
        return static_cast<double>(n) * a;
    }
    if (n < 0)
        throw Error(ErrorCode::NegativeExponentInRealSemiring,
                    "negative exponents are only defined in the arctic semiring");
    double r = a;
    for (int i = 1; i < n; ++i) r *= a;
    return r;
}

}  // namespace semiring
}  // namespace fruits
