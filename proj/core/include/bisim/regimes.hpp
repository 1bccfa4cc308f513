#pragma once

#include "bisim/grid.hpp"
#include "bisim/medium.hpp"

#include <optional>
#include <string_view>

namespace bisim {

enum class RegimeLabel { DampedRabi, OverdampedRabi, GroupDelayLossless, GroupDelayLossy, Mixed };

std::string_view to_string(RegimeLabel label) noexcept;

struct RegimeCriteria {
    double margin = 2.0;
    bool rabi_frequency_real = false;           // Omega_c > |gamma13 - gamma12|
    bool critically_damped = false;             // Omega_c == |gamma13 - gamma12|
    bool rabi_time_exceeds_delay = false;       // tau_r >= margin * tau_g
    bool coherence_time_exceeds_delay = false;  // tau_e >= margin * tau_g
    bool delay_exceeds_rabi_time = false;       // tau_g >= margin * tau_r
    bool transparency_exceeds_phase_matching = false;  // d_omega_tr > d_omega_g
    bool transparency_window_exists = false;    // Omega_c^2 > 4 gamma12 gamma13
    bool phase_matching_flat = false;           // d_omega_g > 4 max(Omega_e, 2 gamma_e)
    double transmission = 1.0;                  // exp(-alpha L)
    bool lossless = false;                      // alpha L <= 0.5
    bool lossy = false;                         // alpha L >= 2
};

struct Classification {
    RegimeLabel label = RegimeLabel::Mixed;
    RegimeCriteria criteria;
};

Classification classify(const MediumParams& m, const DriveParams& d);

// Label implied by a criteria record alone.
RegimeLabel decide(const RegimeCriteria& c) noexcept;

enum class AnalyticForm {
    DampedRabi,       // L B e^{-gamma_e tau} sin(Omega_e tau / 2)
    Overdamped,       // L B' e^{-gamma_e tau} sinh(beta_e tau / 2)
    WeakCoupling,     // (L B' / 2)(e^{-gamma12 tau} - e^{-gamma13 tau})
    Rectangle,        // kappa0 V_g on [0, tau_g]
    LossyExponential  // kappa0 V_g e^{-alpha V_g tau}
};

std::string_view to_string(AnalyticForm form) noexcept;

// Closed form that serves as oracle for a label; none for Mixed.
std::optional<AnalyticForm> oracle_for(RegimeLabel label) noexcept;

struct AnalyticWaveform {
    Waveform wave;
    AnalyticForm form = AnalyticForm::DampedRabi;
    complex b_constant;
};

// Heaviside step with the symmetric value at the origin.
double step_function(double tau) noexcept;

// B with Omega_e, or with beta_e in the overdamped case.
complex b_constant(const MediumParams& m, const DriveParams& d);

complex analytic_kappa_t(double tau, const MediumParams& m, const DriveParams& d);
double analytic_g2_rabi(double tau, const MediumParams& m, const DriveParams& d);
complex analytic_overdamped(double tau, const MediumParams& m, const DriveParams& d);
complex analytic_weak_coupling(double tau, const MediumParams& m, const DriveParams& d);
complex analytic_rect(double tau, const MediumParams& m, const DriveParams& d);
complex analytic_lossy(double tau, const MediumParams& m, const DriveParams& d);

// First maximum of the damped-Rabi G2, from tan(Omega_e tau / 2) = Omega_e / (2 gamma_e).
double rabi_first_peak_time(const MediumParams& m, const DriveParams& d);

AnalyticWaveform sample_analytic(AnalyticForm form, const UniformAxis& tau,
                                 const MediumParams& m, const DriveParams& d);

struct ComparisonMetrics {
    double rms_rel = 0.0;
    double peak_shift = 0.0;        // s
    double support_mismatch = 0.0;  // Jaccard distance of the 10 % supports
};

// Magnitudes are normalized to unit energy and the analytic one is scaled by
// the least-squares positive factor before the residual is taken.
ComparisonMetrics compare(const Waveform& numeric, const AnalyticWaveform& analytic);
ComparisonMetrics compare(const Waveform& numeric, const Waveform& reference);

}  // namespace bisim
