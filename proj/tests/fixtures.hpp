#pragma once

#include "bisim/medium.hpp"
#include "bisim/units.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace fixtures {

inline constexpr double gamma13 = bisim::two_pi * 3e6;
inline constexpr double sigma13 = 1e-13;
inline constexpr double length = 0.015;
inline constexpr double omega_as = bisim::two_pi * bisim::speed_of_light / 795e-9;
inline constexpr double omega_s = bisim::two_pi * bisim::speed_of_light / 780e-9;

inline bisim::MediumParams medium(double od, double g12, double g14 = 1.0)
{
    return bisim::MediumParams::with_optical_depth(od, g12 * gamma13, gamma13, g14 * gamma13,
                                                   sigma13, length);
}

inline bisim::DriveParams drive(double omega_c, double omega_p, double delta_p)
{
    bisim::DriveParams d;
    d.omega_c = omega_c * gamma13;
    d.omega_p = omega_p * gamma13;
    d.delta_p = delta_p * gamma13;
    d.omega_as = omega_as;
    d.omega_s = omega_s;
    return d;
}

// Damped-Rabi parameter set; the coupling strength is free.
inline bisim::MediumParams rabi_medium() { return medium(11.0, 0.6); }
inline bisim::DriveParams rabi_drive(double omega_c = 4.0) { return drive(omega_c, 0.8, -7.5); }

// Group-delay parameter set.
inline bisim::MediumParams delay_medium(double od = 53.0, double g12 = 0.02) { return medium(od, g12); }
inline bisim::DriveParams delay_drive(double omega_c = 4.20) { return drive(omega_c, 1.16, 48.67); }

// sqrt(sum |a - b|^2 / sum |b|^2)
inline double rms_relative(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace fixtures
