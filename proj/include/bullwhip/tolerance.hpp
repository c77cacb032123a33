#pragma once

#include <algorithm>
#include <cmath>

namespace bullwhip {

// Identity checks throughout the library: relative 1e-9 with an absolute floor of 1e-12.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

[[nodiscard]] inline bool approx_equal(double a, double b, double rel = kRelTol,
                                       double abs = kAbsTol) noexcept {
    return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace bullwhip
