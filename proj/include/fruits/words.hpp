#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fruits {

/// One variable of a monomial: dimension index (1-based) raised to a
/// nonzero integer power.
struct Factor {
    int dim = 1;
    int exponent = 1;

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// A non-constant monomial over dimension indices, e.g. [1^2 2]. Factors are
/// kept sorted by dimension with no duplicates and no zero exponents.
class ExtendedLetter {
public:
    ExtendedLetter() = default;
    /// Merges repeated dimensions (summing exponents) and sorts. Throws
    /// ZeroExponent if a merged exponent vanishes, InvalidSpec if empty.
    explicit ExtendedLetter(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    int weight() const noexcept;
    int max_dim() const noexcept;
    bool has_negative_exponent() const noexcept;

    friend bool operator==(const ExtendedLetter&, const ExtendedLetter&) = default;

private:
    std::vector<Factor> factors_;
};

/// A nonempty sequence of extended letters.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<ExtendedLetter> letters);

    const std::vector<ExtendedLetter>& letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    /// Sum of absolute exponents over all letters.
    int weight() const noexcept;
    int max_dim() const noexcept;
    bool has_negative_exponent() const noexcept;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<ExtendedLetter> letters_;
};

/// Parses the bracket notation, e.g. "[1^22][2^3]" or "[1^(-1)][(12)]".
///   word     := letter+
///   letter   := '[' factor+ ']'
///   factor   := dim exponent?
///   dim      := digit 1-9 | '(' integer ')'
///   exponent := '^' (digit | '(' signed-integer ')')
/// Whitespace inside brackets is ignored.
Word parse_word(std::string_view text, int dims);

std::string format_word(const Word& w);
std::string format_letter(const ExtendedLetter& a);

/// All positive-exponent words over `dims` dimensions with weight at most
/// `max_weight`, ordered by (weight, canonical text).
std::vector<Word> enumerate_words(int dims, int max_weight);

/// [a][b^-1][a][b^-1]... of the given length; the exponent signs alternate
/// and the first letter carries +1 when `start_positive`, -1 otherwise.
Word alternating_word(int a, int b, int length, bool start_positive);

/// Both sign starts: first the one beginning with +1, then with -1.
std::pair<Word, Word> alternating_arctic_words(int a, int b, int length);

}  // namespace fruits
