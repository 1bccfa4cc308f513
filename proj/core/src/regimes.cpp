#include "bisim/regimes.hpp"

#include "bisim/biphoton.hpp"
#include "bisim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bisim {

std::string_view to_string(RegimeLabel label) noexcept
{
    switch (label) {
    case RegimeLabel::DampedRabi: return "DampedRabi";
    case RegimeLabel::OverdampedRabi: return "OverdampedRabi";
    case RegimeLabel::GroupDelayLossless: return "GroupDelayLossless";
    case RegimeLabel::GroupDelayLossy: return "GroupDelayLossy";
    case RegimeLabel::Mixed: return "Mixed";
    }
    return "Mixed";
}

std::string_view to_string(AnalyticForm form) noexcept
{
    switch (form) {
    case AnalyticForm::DampedRabi: return "damped_rabi";
    case AnalyticForm::Overdamped: return "overdamped";
    case AnalyticForm::WeakCoupling: return "weak_coupling";
    case AnalyticForm::Rectangle: return "rectangle";
    case AnalyticForm::LossyExponential: return "lossy_exponential";
    }
    return "damped_rabi";
}

std::optional<AnalyticForm> oracle_for(RegimeLabel label) noexcept
{
    switch (label) {
    case RegimeLabel::DampedRabi: return AnalyticForm::DampedRabi;
    case RegimeLabel::OverdampedRabi: return AnalyticForm::Overdamped;
    case RegimeLabel::GroupDelayLossless: return AnalyticForm::Rectangle;
    case RegimeLabel::GroupDelayLossy: return AnalyticForm::LossyExponential;
    case RegimeLabel::Mixed: return std::nullopt;
    }
    return std::nullopt;
}

RegimeLabel decide(const RegimeCriteria& c) noexcept
{
    if (c.critically_damped) {
        return RegimeLabel::Mixed;
    }
    if (!c.rabi_frequency_real) {
        return RegimeLabel::OverdampedRabi;
    }
    if (c.rabi_time_exceeds_delay && c.coherence_time_exceeds_delay) {
        return RegimeLabel::DampedRabi;
    }
    if (c.delay_exceeds_rabi_time) {
        if (c.lossy) {
            return RegimeLabel::GroupDelayLossy;
        }
        if (c.lossless && c.transparency_exceeds_phase_matching) {
            return RegimeLabel::GroupDelayLossless;
        }
    }
    return RegimeLabel::Mixed;
}

Classification classify(const MediumParams& m, const DriveParams& d)
{
    const DerivedScales s = characteristic_scales(m, d);
    RegimeCriteria c;
    const double split = std::abs(m.gamma13 - m.gamma12);
    c.rabi_frequency_real = s.rabi_real;
    c.critically_damped = d.omega_c == split;
    c.rabi_time_exceeds_delay = s.tau_r >= c.margin * s.tau_g;
    c.coherence_time_exceeds_delay = s.tau_e >= c.margin * s.tau_g;
    c.delay_exceeds_rabi_time = s.rabi_real && s.tau_g >= c.margin * s.tau_r;
    c.transparency_exceeds_phase_matching = s.d_omega_tr > s.d_omega_g;
    c.transparency_window_exists = d.omega_c * d.omega_c > 4.0 * m.gamma12 * m.gamma13;
    c.phase_matching_flat = s.d_omega_g > 4.0 * std::max(s.omega_e, 2.0 * s.gamma_e);
    const double loss = s.alpha * m.length;
    c.transmission = std::exp(-loss);
    c.lossless = loss <= 0.5;
    c.lossy = loss >= 2.0;
    return {decide(c), c};
}

double step_function(double tau) noexcept
{
    if (tau > 0.0) {
        return 1.0;
    }
    return tau < 0.0 ? 0.0 : 0.5;
}

complex b_constant(const MediumParams& m, const DriveParams& d)
{
    const DerivedScales s = characteristic_scales(m, d);
    const double splitting = s.rabi_real ? s.omega_e : s.beta_e;
    if (splitting == 0.0) {
        throw Error(ErrorKind::NonPhysicalParams, "critically damped: closed forms degenerate");
    }
    const double prefactor = m.density * m.dipole_scale * std::sqrt(d.omega_as * d.omega_s) /
                             (4.0 * speed_of_light * splitting);
    return complex{0.0, -prefactor} / complex{d.delta_p, m.gamma14};
}

complex analytic_kappa_t(double tau, const MediumParams& m, const DriveParams& d)
{
    const DerivedScales s = characteristic_scales(m, d);
    const double theta = step_function(tau);
    if (theta == 0.0) {
        return {};
    }
    const double envelope = std::exp(-s.gamma_e * tau) * theta;
    const double oscillation =
        s.rabi_real ? std::sin(0.5 * s.omega_e * tau) : std::sinh(0.5 * s.beta_e * tau);
    return b_constant(m, d) * envelope * oscillation;
}

double analytic_g2_rabi(double tau, const MediumParams& m, const DriveParams& d)
{
    const DerivedScales s = characteristic_scales(m, d);
    if (!s.rabi_real) {
        throw Error(ErrorKind::NonPhysicalParams, "damped-Rabi form needs a real Omega_e");
    }
    const double bl = std::abs(b_constant(m, d)) * m.length;
    return 0.5 * bl * bl * std::exp(-2.0 * s.gamma_e * tau) *
           (1.0 - std::cos(s.omega_e * tau)) * step_function(tau);
}

complex analytic_overdamped(double tau, const MediumParams& m, const DriveParams& d)
{
    const DerivedScales s = characteristic_scales(m, d);
    if (s.rabi_real) {
        throw Error(ErrorKind::NonPhysicalParams, "overdamped form needs Omega_c < |gamma13 - gamma12|");
    }
    return m.length * analytic_kappa_t(tau, m, d);
}

complex analytic_weak_coupling(double tau, const MediumParams& m, const DriveParams& d)
{
    const double theta = step_function(tau);
    if (theta == 0.0) {
        return {};
    }
    const double slow = std::min(m.gamma12, m.gamma13);
    const double fast = std::max(m.gamma12, m.gamma13);
    return 0.5 * m.length * b_constant(m, d) * theta *
           (std::exp(-slow * tau) - std::exp(-fast * tau));
}

complex analytic_rect(double tau, const MediumParams& m, const DriveParams& d)
{
    const DerivedScales s = characteristic_scales(m, d);
    const complex amplitude = kappa(0.0, m, d) * s.v_g;
    if (tau < 0.0 || tau > s.tau_g) {
        return {};
    }
    if (tau == 0.0 || tau == s.tau_g) {
        return 0.5 * amplitude;
    }
    return amplitude;
}

complex analytic_lossy(double tau, const MediumParams& m, const DriveParams& d)
{
    const DerivedScales s = characteristic_scales(m, d);
    const double theta = step_function(tau);
    if (theta == 0.0) {
        return {};
    }
    return kappa(0.0, m, d) * s.v_g * std::exp(-s.alpha * s.v_g * tau) * theta;
}

double rabi_first_peak_time(const MediumParams& m, const DriveParams& d)
{
    const DerivedScales s = characteristic_scales(m, d);
    if (!s.rabi_real) {
        throw Error(ErrorKind::NonPhysicalParams, "no oscillation without a real Omega_e");
    }
    return 2.0 / s.omega_e * std::atan(s.omega_e / (2.0 * s.gamma_e));
}

AnalyticWaveform sample_analytic(AnalyticForm form, const UniformAxis& tau,
                                 const MediumParams& m, const DriveParams& d)
{
    AnalyticWaveform out;
    out.form = form;
    switch (form) {
    case AnalyticForm::DampedRabi:
    case AnalyticForm::Overdamped:
    case AnalyticForm::WeakCoupling:
        out.b_constant = b_constant(m, d);
        break;
    case AnalyticForm::Rectangle:
    case AnalyticForm::LossyExponential:
        out.b_constant = kappa(0.0, m, d) * characteristic_scales(m, d).v_g;
        break;
    }
    out.wave = sample_waveform(tau, [&](double t) -> complex {
        switch (form) {
        case AnalyticForm::DampedRabi: return m.length * analytic_kappa_t(t, m, d);
        case AnalyticForm::Overdamped: return analytic_overdamped(t, m, d);
        case AnalyticForm::WeakCoupling: return analytic_weak_coupling(t, m, d);
        case AnalyticForm::Rectangle: return analytic_rect(t, m, d);
        case AnalyticForm::LossyExponential: return analytic_lossy(t, m, d);
        }
        return {};
    });
    return out;
}

ComparisonMetrics compare(const Waveform& numeric, const Waveform& reference)
{
    const std::size_t n = numeric.values.size();
    if (reference.values.size() != n || numeric.tau.size != reference.tau.size ||
        std::abs(numeric.tau.step - reference.tau.step) > 1e-12 * std::abs(numeric.tau.step) ||
        std::abs(numeric.tau.start - reference.tau.start) > 1e-9 * std::abs(numeric.tau.step)) {
        throw Error(ErrorKind::GridMismatch, "compare needs a common delay grid");
    }
    std::vector<double> a(n), b(n);
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = std::abs(numeric.values[i]);
        b[i] = std::abs(reference.values[i]);
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    ComparisonMetrics out;
    if (!(na > 0.0) || !(nb > 0.0)) {
        out.rms_rel = (na > 0.0) == (nb > 0.0) ? 0.0 : 1.0;
        return out;
    }
    const double ia = 1.0 / std::sqrt(na);
    const double ib = 1.0 / std::sqrt(nb);
    double cross = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a[i] *= ia;
        b[i] *= ib;
        cross += a[i] * b[i];
    }
    const double scale = std::max(cross, 0.0);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = a[i] - scale * b[i];
        residual += r * r;
    }
    out.rms_rel = std::sqrt(residual);

    const auto peak_a = std::max_element(a.begin(), a.end()) - a.begin();
    const auto peak_b = std::max_element(b.begin(), b.end()) - b.begin();
    out.peak_shift = numeric.tau[static_cast<std::size_t>(peak_a)] -
                     numeric.tau[static_cast<std::size_t>(peak_b)];

    const double level_a = 0.1 * a[static_cast<std::size_t>(peak_a)] * a[static_cast<std::size_t>(peak_a)];
    const double level_b = 0.1 * b[static_cast<std::size_t>(peak_b)] * b[static_cast<std::size_t>(peak_b)];
    std::size_t either = 0;
    std::size_t both = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool in_a = a[i] * a[i] >= level_a;
        const bool in_b = b[i] * b[i] >= level_b;
        either += (in_a || in_b) ? 1 : 0;
        both += (in_a && in_b) ? 1 : 0;
    }
    out.support_mismatch = either > 0 ? 1.0 - static_cast<double>(both) / static_cast<double>(either) : 0.0;
    return out;
}

ComparisonMetrics compare(const Waveform& numeric, const AnalyticWaveform& analytic)
{
    return compare(numeric, analytic.wave);
}

}  // namespace bisim
