#include "bisim/phasematch.hpp"

#include "bisim/errors.hpp"

#include <cmath>
#include <sstream>

namespace bisim {

namespace {

constexpr double overflow_limit = 700.0;

void check_overflow(complex half_mismatch, double omega)
{
    if (std::abs(half_mismatch.imag()) > overflow_limit) {
        std::ostringstream msg;
        msg << "|Im dk| L/2 = " << std::abs(half_mismatch.imag()) << " at omega = " << omega
            << " rad/s";
        throw Error(ErrorKind::Overflow, msg.str());
    }
}

}  // namespace

std::string_view to_string(PhiVariant v) noexcept
{
    switch (v) {
    case PhiVariant::Exact: return "exact";
    case PhiVariant::ApproxLossy: return "lossy";
    case PhiVariant::ApproxLossless: return "lossless";
    case PhiVariant::ApproxPole: return "pole";
    case PhiVariant::Unity: return "unity";
    }
    return "exact";
}

std::optional<PhiVariant> parse_phi_variant(std::string_view name) noexcept
{
    for (PhiVariant v : {PhiVariant::Exact, PhiVariant::ApproxLossy, PhiVariant::ApproxLossless,
                         PhiVariant::ApproxPole, PhiVariant::Unity}) {
        if (to_string(v) == name) {
            return v;
        }
    }
    return std::nullopt;
}

FieldWaveNumbers field_wave_numbers(double omega, const MediumParams& m, const DriveParams& d)
{
    return {medium_wave_number(d.omega_as, omega, chi_as(omega, m, d)),
            medium_wave_number(d.omega_s, -omega, stokes_susceptibility(omega, m, d))};
}

PhaseMismatch delta_k(double omega, const MediumParams& m, const DriveParams& d,
                      bool conjugate_stokes)
{
    const FieldWaveNumbers k = field_wave_numbers(omega, m, d);
    const complex stokes = conjugate_stokes ? std::conj(k.stokes) : k.stokes;
    const complex dk =
        d.geometry == Geometry::Forward ? k.anti_stokes + stokes : k.anti_stokes - stokes;
    return {dk, d.geometry, conjugate_stokes};
}

complex sinc(complex z) noexcept
{
    if (std::abs(z) < 1e-4) {
        const complex z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

PhaseMatching::PhaseMatching(const MediumParams& m, const DriveParams& d, PhiVariant variant,
                             bool conjugate_stokes)
    : m_(m), d_(d), variant_(variant), conjugate_(conjugate_stokes)
{
    m_.validate();
    d_.validate();
    if (variant_ == PhiVariant::Exact || variant_ == PhiVariant::Unity) {
        return;
    }
    tau_g_ = group_delay(m_, d_, DelayMode::Approximate);
    loss_ = eit_alpha(m_, d_) * m_.length;
    if (variant_ == PhiVariant::ApproxPole && !(loss_ > 0.0)) {
        throw Error(ErrorKind::NonPhysicalParams, "pole approximation needs alpha L > 0");
    }
    if (variant_ == PhiVariant::ApproxLossy) {
        check_overflow({0.0, 0.5 * loss_}, 0.0);
    }
}

complex PhaseMatching::operator()(double omega) const
{
    switch (variant_) {
    case PhiVariant::Exact: {
        const FieldWaveNumbers k = field_wave_numbers(omega, m_, d_);
        const complex stokes = conjugate_ ? std::conj(k.stokes) : k.stokes;
        const complex dk =
            d_.geometry == Geometry::Forward ? k.anti_stokes + stokes : k.anti_stokes - stokes;
        const complex z = 0.5 * m_.length * dk;
        check_overflow(z, omega);
        const complex phase{0.0, 0.5 * m_.length};
        return sinc(z) * std::exp(phase * (k.anti_stokes + k.stokes));
    }
    case PhiVariant::ApproxLossy: {
        const double x = 0.5 * omega * tau_g_;
        return sinc({x, 0.5 * loss_}) * std::exp(complex{-0.5 * loss_, x});
    }
    case PhiVariant::ApproxLossless: {
        const double x = 0.5 * omega * tau_g_;
        return sinc(complex{x, 0.0}) * std::exp(complex{0.0, x});
    }
    case PhiVariant::ApproxPole:
        return complex{0.0, 1.0} / complex{omega * tau_g_, loss_};
    case PhiVariant::Unity:
        return 1.0;
    }
    return 1.0;
}

DetuningFunction detuning_function(PhiVariant variant, const UniformAxis& grid,
                                   const MediumParams& m, const DriveParams& d,
                                   bool conjugate_stokes)
{
    const PhaseMatching phi(m, d, variant, conjugate_stokes);
    return {sample_spectrum(grid, phi, d.omega_as), variant};
}

DetuningFunction phi_exact(const UniformAxis& grid, const MediumParams& m,
                           const DriveParams& d, bool conjugate_stokes)
{
    return detuning_function(PhiVariant::Exact, grid, m, d, conjugate_stokes);
}

DetuningFunction phi_approx_lossy(const UniformAxis& grid, const MediumParams& m,
                                  const DriveParams& d)
{
    return detuning_function(PhiVariant::ApproxLossy, grid, m, d);
}

DetuningFunction phi_approx_lossless(const UniformAxis& grid, const MediumParams& m,
                                     const DriveParams& d)
{
    return detuning_function(PhiVariant::ApproxLossless, grid, m, d);
}

DetuningFunction phi_approx_pole(const UniformAxis& grid, const MediumParams& m,
                                 const DriveParams& d)
{
    return detuning_function(PhiVariant::ApproxPole, grid, m, d);
}

}  // namespace bisim
