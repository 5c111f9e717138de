#pragma once

#include <limits>
#include <string_view>

namespace fruits {

/// The two commutative semirings an iterated sum can be computed over.
///   Real   = (R, +, *, 0, 1)
///   Arctic = (R u {-inf}, max, +, -inf, 0)
enum class Semiring { Real, Arctic };

std::string_view to_string(Semiring s) noexcept;
Semiring semiring_from_string(std::string_view name);

// Operation tables used by the templated kernels. Both are stateless; the
// arctic bottom element is -infinity, which max and + handle natively.
struct RealOps {
    static constexpr double zero() noexcept { return 0.0; }
    static constexpr double one() noexcept { return 1.0; }
    static constexpr double add(double a, double b) noexcept { return a + b; }
    static constexpr double mul(double a, double b) noexcept { return a * b; }
};

struct ArcticOps {
    static constexpr double zero() noexcept { return -std::numeric_limits<double>::infinity(); }
    static constexpr double one() noexcept { return 0.0; }
    static constexpr double add(double a, double b) noexcept { return a < b ? b : a; }
    static constexpr double mul(double a, double b) noexcept {
        // -inf + (+inf) would be NaN; the bottom element must annihilate.
        if (a == zero() || b == zero()) return zero();
        return a + b;
    }
};

namespace semiring {

double zero(Semiring s) noexcept;
double one(Semiring s) noexcept;
double add(double a, double b, Semiring s) noexcept;
double mul(double a, double b, Semiring s) noexcept;

/// n-fold product of a with itself. Negative n is only meaningful for the
/// arctic semiring (a signed multiple); the real semiring throws
/// NegativeExponentInRealSemiring. n == 0 throws InvalidSpec.
double pow(double a, int n, Semiring s);

}  // namespace semiring
}  // namespace fruits
