#include "bisim/medium.hpp"

#include "bisim/errors.hpp"

#include <cmath>
#include <string>

namespace bisim {

namespace {

bool finite(double x) { return std::isfinite(x); }

// Omega_c^2 - 4 (w + i g13)(w + i g12), the two-photon EIT denominator.
complex eit_denominator(complex w13, complex w12, double omega_c)
{
    return omega_c * omega_c - 4.0 * w13 * w12;
}

// N |mu13|^2 / (eps0 hbar), expressed through the resonant cross section.
double resonant_strength(const MediumParams& m, const DriveParams& d)
{
    return m.density * m.sigma13 * speed_of_light * m.gamma13 / d.omega_as;
}

void check_denominator(complex value, const char* what, double omega)
{
    if (value == complex{}) {
        throw Error(ErrorKind::NonPhysicalParams,
                    std::string(what) + " denominator vanishes at omega = " +
                        std::to_string(omega));
    }
}

void check_branch(complex one_plus_chi)
{
    if (one_plus_chi.imag() == 0.0 && one_plus_chi.real() <= 0.0) {
        throw Error(ErrorKind::BranchCut,
                    "1 + chi = " + std::to_string(one_plus_chi.real()) +
                        " lies on the negative real axis");
    }
}

}  // namespace

MediumParams MediumParams::with_optical_depth(double optical_depth, double gamma12,
                                              double gamma13, double gamma14,
                                              double sigma13, double length)
{
    MediumParams m;
    m.gamma12 = gamma12;
    m.gamma13 = gamma13;
    m.gamma14 = gamma14;
    m.sigma13 = sigma13;
    m.length = length;
    m.density = optical_depth / (sigma13 * length);
    return m;
}

void MediumParams::validate() const
{
    if (!(gamma13 > 0.0) || !finite(gamma13)) {
        throw Error(ErrorKind::NonPhysicalParams, "gamma13 must be positive");
    }
    if (!(gamma14 > 0.0) || !finite(gamma14)) {
        throw Error(ErrorKind::NonPhysicalParams, "gamma14 must be positive");
    }
    if (!(gamma12 >= 0.0) || !finite(gamma12)) {
        throw Error(ErrorKind::NonPhysicalParams, "gamma12 must be non-negative");
    }
    if (!(density > 0.0) || !finite(density)) {
        throw Error(ErrorKind::NonPhysicalParams, "density must be positive");
    }
    if (!(sigma13 > 0.0) || !finite(sigma13)) {
        throw Error(ErrorKind::NonPhysicalParams, "sigma13 must be positive");
    }
    if (!(length > 0.0) || !finite(length)) {
        throw Error(ErrorKind::NonPhysicalParams, "length must be positive");
    }
    if (!finite(dipole_scale)) {
        throw Error(ErrorKind::NonPhysicalParams, "dipole_scale must be finite");
    }
}

void DriveParams::validate() const
{
    if (!(omega_c >= 0.0) || !finite(omega_c)) {
        throw Error(ErrorKind::NonPhysicalParams, "coupling Rabi frequency must be >= 0");
    }
    if (!(omega_p >= 0.0) || !finite(omega_p)) {
        throw Error(ErrorKind::NonPhysicalParams, "pump Rabi frequency must be >= 0");
    }
    if (!finite(delta_p)) {
        throw Error(ErrorKind::NonPhysicalParams, "pump detuning must be finite");
    }
    if (!(omega_as > 0.0) || !(omega_s > 0.0) || !finite(omega_as) || !finite(omega_s)) {
        throw Error(ErrorKind::NonPhysicalParams, "carrier frequencies must be positive");
    }
}

bool pump_far_detuned(const DriveParams& d) noexcept
{
    return std::abs(d.omega_p) <= 0.1 * std::abs(d.delta_p);
}

complex chi3(double omega, const MediumParams& m, const DriveParams& d)
{
    m.validate();
    const complex pump{d.delta_p, m.gamma14};
    const complex den = pump * eit_denominator({omega, m.gamma13}, {omega, m.gamma12}, d.omega_c);
    check_denominator(den, "chi3", omega);
    return m.density * m.dipole_scale / den;
}

complex chi_as(double omega, const MediumParams& m, const DriveParams& d)
{
    m.validate();
    const complex w12{omega, m.gamma12};
    const complex den = eit_denominator({omega, m.gamma13}, w12, d.omega_c);
    check_denominator(den, "chi_as", omega);
    return 4.0 * resonant_strength(m, d) * w12 / den;
}

complex chi_s(double omega, const MediumParams& m, const DriveParams& d)
{
    m.validate();
    const complex w13{omega, -m.gamma13};
    const complex den = eit_denominator(w13, {omega, -m.gamma12}, d.omega_c);
    check_denominator(den, "chi_s", omega);
    const double pump_factor =
        d.omega_p * d.omega_p / (d.delta_p * d.delta_p + m.gamma14 * m.gamma14);
    return resonant_strength(m, d) * w13 / den * pump_factor;
}

complex stokes_susceptibility(double omega, const MediumParams& m, const DriveParams& d)
{
    return d.degenerate ? chi_as(-omega, m, d) : chi_s(omega, m, d);
}

complex wave_number(double frequency, complex chi)
{
    const complex one_plus = 1.0 + chi;
    check_branch(one_plus);
    return frequency / speed_of_light * std::sqrt(one_plus);
}

complex medium_wave_number(double carrier, double detuning, complex chi)
{
    const complex one_plus = 1.0 + chi;
    check_branch(one_plus);
    const complex root = std::sqrt(one_plus);
    return (carrier * (chi / (root + 1.0)) + detuning * root) / speed_of_light;
}

double eit_alpha(const MediumParams& m, const DriveParams& d)
{
    m.validate();
    d.validate();
    if (m.gamma12 == 0.0) {
        return 0.0;
    }
    const double g = m.gamma12 * m.gamma13;
    return 2.0 * m.density * m.sigma13 * g / (d.omega_c * d.omega_c + 4.0 * g);
}

double group_delay(const MediumParams& m, const DriveParams& d, DelayMode mode)
{
    m.validate();
    d.validate();
    if (!(d.omega_c > 0.0)) {
        throw Error(ErrorKind::NonPhysicalParams, "group delay needs a coupling field");
    }
    if (mode == DelayMode::Approximate) {
        return 2.0 * m.gamma13 / (d.omega_c * d.omega_c) * m.optical_depth();
    }

    if (d.omega_c * d.omega_c <= 4.0 * m.gamma12 * m.gamma13) {
        throw Error(ErrorKind::DivergentDelay,
                    "Omega_c^2 <= 4 gamma12 gamma13: no transparency window to differentiate");
    }
    const auto re_k = [&](double w) {
        return medium_wave_number(d.omega_as, w, chi_as(w, m, d)).real();
    };
    const auto slope = [&](double h) { return (re_k(h) - re_k(-h)) / (2.0 * h); };
    const double h = 1e-4 * m.gamma13;
    const double coarse = slope(h);
    const double fine = slope(0.5 * h);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    if (!(extrapolated > 0.0) || std::abs(fine - coarse) > 1e-3 * std::abs(fine)) {
        throw Error(ErrorKind::DivergentDelay, "finite-difference group delay is unstable");
    }
    return m.length * extrapolated;
}

DerivedScales characteristic_scales(const MediumParams& m, const DriveParams& d)
{
    m.validate();
    d.validate();
    DerivedScales s;
    const double split = m.gamma13 - m.gamma12;
    const double discriminant = d.omega_c * d.omega_c - split * split;
    s.rabi_real = d.omega_c > std::abs(split);
    if (s.rabi_real) {
        s.omega_e = std::sqrt(discriminant);
        s.tau_r = two_pi / s.omega_e;
    } else {
        s.beta_e = std::sqrt(-discriminant);
    }
    s.gamma_e = 0.5 * (m.gamma12 + m.gamma13);
    s.tau_e = 1.0 / (2.0 * s.gamma_e);
    s.alpha = eit_alpha(m, d);
    const double od = m.optical_depth();
    if (d.omega_c > 0.0) {
        s.tau_g = group_delay(m, d, DelayMode::Approximate);
        s.v_g = m.length / s.tau_g;
        s.d_omega_g = two_pi * 0.88 / s.tau_g;
        s.d_omega_tr = d.omega_c * d.omega_c / (2.0 * m.gamma13 * std::sqrt(od));
    } else {
        s.tau_g = std::numeric_limits<double>::infinity();
    }
    return s;
}

double transparency_width(const MediumParams& m, const DriveParams& d)
{
    m.validate();
    d.validate();
    if (!(d.omega_c > 0.0)) {
        return 0.0;
    }
    const auto loss = [&](double w) {
        return 2.0 * m.length * medium_wave_number(d.omega_as, w, chi_as(w, m, d)).imag();
    };
    const double reference = loss(0.0);
    const double edge = 0.5 * d.omega_c;
    const auto crossing = [&](double sign) {
        double lo = 0.0;
        double hi = sign * edge;
        if (loss(hi) - reference < 1.0) {
            return sign * std::numeric_limits<double>::infinity();
        }
        for (int i = 0; i < 200 && std::abs(hi - lo) > 1e-15 * edge; ++i) {
            const double mid = 0.5 * (lo + hi);
            (loss(mid) - reference < 1.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    return crossing(1.0) - crossing(-1.0);
}

bool transparency_exceeds_phase_matching(const MediumParams& m, const DriveParams& d)
{
    const DerivedScales s = characteristic_scales(m, d);
    return s.d_omega_tr > two_pi / s.tau_g;
}

}  // namespace bisim
