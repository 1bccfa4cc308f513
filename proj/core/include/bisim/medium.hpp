#pragma once

#include "bisim/units.hpp"

#include <limits>

namespace bisim {

// Four-level double-Lambda ensemble. Rates are in rad/s.
struct MediumParams {
    double gamma12 = 0.0;
    double gamma13 = 0.0;
    double gamma14 = 0.0;
    double density = 0.0;  // atoms per m^3
    double sigma13 = 0.0;  // on-resonance cross section of 1->3, m^2
    double length = 0.0;   // m
    // Dipole product and drive amplitudes folded into one real factor.
    double dipole_scale = 1.0;

    double optical_depth() const noexcept { return density * sigma13 * length; }

    static MediumParams with_optical_depth(double optical_depth, double gamma12,
                                           double gamma13, double gamma14,
                                           double sigma13, double length);

    void validate() const;

    bool operator==(const MediumParams&) const = default;
};

enum class Geometry { Forward, Backward };

struct DriveParams {
    double omega_c = 0.0;   // coupling Rabi frequency
    double omega_p = 0.0;   // pump Rabi frequency
    double delta_p = 0.0;   // pump detuning from 1->4
    double omega_as = 0.0;  // anti-Stokes carrier (the 1->3 line)
    double omega_s = 0.0;   // Stokes carrier
    Geometry geometry = Geometry::Forward;
    // Stokes and anti-Stokes share one transition; the Stokes field then
    // sees the anti-Stokes response at mirrored detuning.
    bool degenerate = false;
    double stokes_transition = 0.0;  // informational only

    void validate() const;

    bool operator==(const DriveParams&) const = default;
};

// True when |Omega_p| is at most a tenth of |Delta_p|.
bool pump_far_detuned(const DriveParams& d) noexcept;

struct DerivedScales {
    bool rabi_real = true;  // Omega_c > |gamma13 - gamma12|
    double omega_e = 0.0;   // zero when overdamped
    double beta_e = 0.0;    // zero when underdamped
    double gamma_e = 0.0;
    double tau_r = std::numeric_limits<double>::infinity();
    double tau_e = 0.0;
    double tau_g = 0.0;
    double alpha = 0.0;
    double v_g = 0.0;
    double d_omega_g = 0.0;
    double d_omega_tr = 0.0;
};

complex chi3(double omega, const MediumParams& m, const DriveParams& d);
complex chi_as(double omega, const MediumParams& m, const DriveParams& d);
complex chi_s(double omega, const MediumParams& m, const DriveParams& d);

// Susceptibility seen by the Stokes field at anti-Stokes detuning omega.
complex stokes_susceptibility(double omega, const MediumParams& m, const DriveParams& d);

complex wave_number(double frequency, complex chi);

// k - carrier/c for a field at carrier + detuning, free of cancellation.
complex medium_wave_number(double carrier, double detuning, complex chi);

double eit_alpha(const MediumParams& m, const DriveParams& d);

enum class DelayMode { Approximate, ExactDerivative };

double group_delay(const MediumParams& m, const DriveParams& d,
                   DelayMode mode = DelayMode::Approximate);

DerivedScales characteristic_scales(const MediumParams& m, const DriveParams& d);

// Full width of the window where anti-Stokes intensity transmission stays
// above 1/e of its on-resonance value.
double transparency_width(const MediumParams& m, const DriveParams& d);

inline constexpr double rectangularity_od_bound = 4.0 * pi * pi;

// Transparency bandwidth against the 2 pi / tau_g phase-matching width.
bool transparency_exceeds_phase_matching(const MediumParams& m, const DriveParams& d);

}  // namespace bisim
