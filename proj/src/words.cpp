#include "fruits/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>

#include "fruits/error.hpp"

namespace fruits {

ExtendedLetter::ExtendedLetter(std::vector<Factor> factors) {
    if (factors.empty()) throw Error(ErrorCode::InvalidSpec, "a letter needs at least one factor");
    std::map<int, int> merged;
    for (const auto& f : factors) {
        if (f.dim < 1) throw Error(ErrorCode::DimensionOutOfRange, "dimension indices start at 1");
        merged[f.dim] += f.exponent;
    }
    for (const auto& [dim, exponent] : merged) {
        if (exponent == 0)
            throw Error(ErrorCode::ZeroExponent,
                        "exponent of dimension " + std::to_string(dim) + " is zero");
        factors_.push_back({dim, exponent});
    }
}

int ExtendedLetter::weight() const noexcept {
    int w = 0;
    for (const auto& f : factors_) w += std::abs(f.exponent);
    return w;
}

int ExtendedLetter::max_dim() const noexcept {
    return factors_.empty() ? 0 : factors_.back().dim;
}

bool ExtendedLetter::has_negative_exponent() const noexcept {
    return std::any_of(factors_.begin(), factors_.end(),
                       [](const Factor& f) { return f.exponent < 0; });
}

Word::Word(std::vector<ExtendedLetter> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw Error(ErrorCode::InvalidSpec, "a word needs at least one letter");
}

int Word::weight() const noexcept {
    return std::accumulate(letters_.begin(), letters_.end(), 0,
                           [](int acc, const ExtendedLetter& a) { return acc + a.weight(); });
}

int Word::max_dim() const noexcept {
    int m = 0;
    for (const auto& a : letters_) m = std::max(m, a.max_dim());
    return m;
}

bool Word::has_negative_exponent() const noexcept {
    return std::any_of(letters_.begin(), letters_.end(),
                       [](const ExtendedLetter& a) { return a.has_negative_exponent(); });
}

namespace {

class WordParser {
public:
    WordParser(std::string_view text, int dims) : text_(text), dims_(dims) {}

    Word parse() {
        std::vector<ExtendedLetter> letters;
        skip_space();
        while (pos_ < text_.size()) {
            letters.push_back(letter());
            skip_space();
        }
        if (letters.empty()) fail("empty word");
        return Word(std::move(letters));
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::ParseError, "cannot parse word '" + std::string(text_) +
                                               "' at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        skip_space();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    long long parenthesized_integer(bool allow_sign) {
        expect('(');
        skip_space();
        const std::size_t start = pos_;
        if (allow_sign && (peek() == '-' || peek() == '+')) ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        std::string_view digits = text_.substr(start, pos_ - start);
        if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
        long long value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) fail("expected an integer");
        if (value > 1'000'000 || value < -1'000'000) fail("integer out of range");
        expect(')');
        return value;
    }

    ExtendedLetter letter() {
        expect('[');
        std::vector<Factor> factors;
        skip_space();
        while (peek() != ']') {
            if (pos_ >= text_.size()) fail("unterminated letter");
            factors.push_back(factor());
            skip_space();
        }
        ++pos_;
        if (factors.empty()) fail("empty letter");
        return ExtendedLetter(std::move(factors));
    }

    Factor factor() {
        Factor f;
        const char c = peek();
        if (c >= '1' && c <= '9') {
            f.dim = c - '0';
            ++pos_;
        } else if (c == '(') {
            f.dim = static_cast<int>(parenthesized_integer(false));
            if (f.dim < 1) fail("dimension index must be positive");
        } else {
            fail("expected a dimension index");
        }
        if (f.dim > dims_)
            throw Error(ErrorCode::DimensionOutOfRange,
                        "dimension " + std::to_string(f.dim) + " exceeds " + std::to_string(dims_) +
                            " in word '" + std::string(text_) + "'");
        skip_space();
        if (peek() == '^') {
            ++pos_;
            skip_space();
            const char e = peek();
            if (e >= '0' && e <= '9') {
                f.exponent = e - '0';
                ++pos_;
            } else if (e == '(') {
                f.exponent = static_cast<int>(parenthesized_integer(true));
            } else {
                fail("expected an exponent");
            }
        }
        return f;
    }

    std::string_view text_;
    int dims_;
    std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, int dims) {
    return WordParser(text, dims).parse();
}

std::string format_letter(const ExtendedLetter& a) {
    std::string out = "[";
    for (const auto& f : a.factors()) {
        if (f.dim <= 9)
            out += static_cast<char>('0' + f.dim);
        else
            out += "(" + std::to_string(f.dim) + ")";
        if (f.exponent == 1) continue;
        if (f.exponent >= 2 && f.exponent <= 9)
            out += "^" + std::to_string(f.exponent);
        else
            out += "^(" + std::to_string(f.exponent) + ")";
    }
    out += "]";
    return out;
}

std::string format_word(const Word& w) {
    std::string out;
    for (const auto& a : w.letters()) out += format_letter(a);
    return out;
}

namespace {

// Exponent vectors of all monomials of total degree `degree` in `dims`
// variables.
void monomials(int dims, int degree, int dim, std::vector<int>& current,
               std::vector<ExtendedLetter>& out) {
    if (dim == dims) {
        if (degree != 0) return;
        std::vector<Factor> factors;
        for (int j = 0; j < dims; ++j)
            if (current[j] != 0) factors.push_back({j + 1, current[j]});
        out.emplace_back(std::move(factors));
        return;
    }
    for (int e = degree; e >= 0; --e) {
        current[dim] = e;
        monomials(dims, degree - e, dim + 1, current, out);
    }
    current[dim] = 0;
}

void compose(const std::vector<std::vector<ExtendedLetter>>& by_degree, int remaining,
             std::vector<ExtendedLetter>& prefix, std::vector<Word>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (int k = 1; k <= remaining; ++k) {
        for (const auto& a : by_degree[k]) {
            prefix.push_back(a);
            compose(by_degree, remaining - k, prefix, out);
            prefix.pop_back();
        }
    }
}

}  // namespace

std::vector<Word> enumerate_words(int dims, int max_weight) {
    if (dims < 1 || max_weight < 1)
        throw Error(ErrorCode::InvalidSpec, "enumerate_words needs dims >= 1 and max_weight >= 1");
    std::vector<std::vector<ExtendedLetter>> by_degree(max_weight + 1);
    std::vector<int> current(dims, 0);
    for (int k = 1; k <= max_weight; ++k) monomials(dims, k, 0, current, by_degree[k]);

    std::vector<Word> result;
    for (int n = 1; n <= max_weight; ++n) {
        std::vector<Word> level;
        std::vector<ExtendedLetter> prefix;
        compose(by_degree, n, prefix, level);
        std::vector<std::pair<std::string, std::size_t>> keys;
        keys.reserve(level.size());
        for (std::size_t i = 0; i < level.size(); ++i) keys.emplace_back(format_word(level[i]), i);
        std::sort(keys.begin(), keys.end());
        for (const auto& [text, i] : keys) result.push_back(std::move(level[i]));
    }
    return result;
}

Word alternating_word(int a, int b, int length, bool start_positive) {
    if (length < 1) throw Error(ErrorCode::InvalidSpec, "alternating word length must be >= 1");
    if (a < 1 || b < 1) throw Error(ErrorCode::DimensionOutOfRange, "dimension indices start at 1");
    std::vector<ExtendedLetter> letters;
    letters.reserve(length);
    int sign = start_positive ? 1 : -1;
    for (int i = 0; i < length; ++i) {
        letters.emplace_back(std::vector<Factor>{{i % 2 == 0 ? a : b, sign}});
        sign = -sign;
    }
    return Word(std::move(letters));
}

std::pair<Word, Word> alternating_arctic_words(int a, int b, int length) {
    return {alternating_word(a, b, length, true), alternating_word(a, b, length, false)};
}

}  // namespace fruits
