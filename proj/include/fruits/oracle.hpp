#pragma once

#include <cstddef>
#include <vector>

#include "fruits/iss.hpp"

namespace fruits {

inline constexpr std::size_t kOracleMaxWordLength = 6;
inline constexpr std::size_t kOracleMaxLength = 64;

/// Direct enumeration of every admissible index tuple, evaluating the
/// weight function as written rather than through any factorisation.
/// O(T^(p+1)); refuses inputs beyond p = 6 or T = 64 with OracleTooLarge.
std::vector<double> iss_brute(const TimeSeries& x, const IssSpec& spec,
                              const TimeSeries* control = nullptr);

}  // namespace fruits
