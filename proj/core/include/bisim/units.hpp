#pragma once

#include <complex>
#include <numbers>

namespace bisim {

using complex = std::complex<double>;

inline constexpr double speed_of_light = 299'792'458.0;  // m/s
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace bisim
