#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fruits {

enum class ErrorCode {
    NegativeExponentInRealSemiring,
    ParseError,
    DimensionOutOfRange,
    ZeroExponent,
    InvalidSpec,
    OracleTooLarge,
    NotUnivariate,
    EmptyPool,
    EmptyTrainingSet,
    DimensionMismatch,
    SingleClass,
    EmptyFeatures,
    ShapeMismatch,
    LengthMismatch,
    IoError,
    MalformedLine,
    EmptyDataset,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as an Error carrying a code that
/// callers (and tests) can branch on.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fruits
