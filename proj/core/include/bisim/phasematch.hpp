#pragma once

#include "bisim/grid.hpp"
#include "bisim/medium.hpp"

#include <optional>
#include <string_view>

namespace bisim {

enum class PhiVariant { Exact, ApproxLossy, ApproxLossless, ApproxPole, Unity };

std::string_view to_string(PhiVariant v) noexcept;
std::optional<PhiVariant> parse_phi_variant(std::string_view name) noexcept;

struct PhaseMismatch {
    complex delta_k;  // 1/m
    Geometry geometry = Geometry::Forward;
    bool conjugation_applied = true;
};

// Medium-induced wave numbers k - carrier/c of both generated fields.
struct FieldWaveNumbers {
    complex anti_stokes;
    complex stokes;
};

FieldWaveNumbers field_wave_numbers(double omega, const MediumParams& m, const DriveParams& d);

PhaseMismatch delta_k(double omega, const MediumParams& m, const DriveParams& d,
                      bool conjugate_stokes = true);

complex sinc(complex z) noexcept;

// Point evaluator for one variant; the linearized variants precompute the
// approximate group delay and loss.
class PhaseMatching {
public:
    PhaseMatching(const MediumParams& m, const DriveParams& d, PhiVariant variant,
                  bool conjugate_stokes = true);

    complex operator()(double omega) const;
    PhiVariant variant() const noexcept { return variant_; }

private:
    MediumParams m_;
    DriveParams d_;
    PhiVariant variant_;
    bool conjugate_;
    double tau_g_ = 0.0;
    double loss_ = 0.0;  // alpha L
};

struct DetuningFunction {
    ComplexSpectrum values;
    PhiVariant variant = PhiVariant::Exact;
};

DetuningFunction detuning_function(PhiVariant variant, const UniformAxis& grid,
                                   const MediumParams& m, const DriveParams& d,
                                   bool conjugate_stokes = true);

DetuningFunction phi_exact(const UniformAxis& grid, const MediumParams& m,
                           const DriveParams& d, bool conjugate_stokes = true);
DetuningFunction phi_approx_lossy(const UniformAxis& grid, const MediumParams& m,
                                  const DriveParams& d);
DetuningFunction phi_approx_lossless(const UniformAxis& grid, const MediumParams& m,
                                     const DriveParams& d);
DetuningFunction phi_approx_pole(const UniformAxis& grid, const MediumParams& m,
                                 const DriveParams& d);

}  // namespace bisim
