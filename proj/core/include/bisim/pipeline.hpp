#pragma once

#include "bisim/grid.hpp"
#include "bisim/medium.hpp"
#include "bisim/phasematch.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace bisim {

enum class KappaModel { Full, Constant };

std::string_view to_string(KappaModel k) noexcept;
std::optional<KappaModel> parse_kappa_model(std::string_view name) noexcept;

struct ModelOptions {
    PhiVariant phi = PhiVariant::Exact;
    KappaModel kappa = KappaModel::Full;  // Constant uses kappa(0) everywhere
    bool conjugate_stokes = true;

    bool operator==(const ModelOptions&) const = default;
};

struct GridOptions {
    std::size_t samples = 0;  // 0 selects the size automatically
    std::size_t min_samples = std::size_t{1} << 14;
    std::size_t max_samples = std::size_t{1} << 20;
    double tail_tolerance = 1e-10;  // target edge-to-peak power ratio

    bool operator==(const GridOptions&) const = default;
};

struct GridPlan {
    double half_span = 0.0;  // rad/s
    std::size_t samples = 0;
    double delay_half_span = 0.0;  // required, s
    bool tail_target_met = false;
};

// Evaluates kappa(w) Phi(w) for one model choice.
class SpectrumModel {
public:
    SpectrumModel(const MediumParams& m, const DriveParams& d, const ModelOptions& options);

    complex operator()(double omega) const;
    ComplexSpectrum sample(const UniformAxis& grid) const;

private:
    MediumParams m_;
    DriveParams d_;
    ModelOptions options_;
    PhaseMatching phi_;
    complex kappa0_;
};

// Delay half-span that holds the biphoton for this model.
double required_delay_half_span(const MediumParams& m, const DriveParams& d,
                                const ModelOptions& options);

// Starting half-span max(40 gamma_e, 8 Omega_e, 64 pi / tau_g) / 2.
double base_half_span(const MediumParams& m, const DriveParams& d,
                      const ModelOptions& options);

struct PipelineResult {
    GridPlan grid;
    ComplexSpectrum kappa_phi;
    Waveform psi;
    double rate_spectral = 0.0;
    double rate_temporal = 0.0;
};

// The spectral half-span doubles until the edge power ratio meets
// tail_tolerance or the sample budget runs out; the sample count covers the
// required delay span.
PipelineResult run_pipeline(const MediumParams& m, const DriveParams& d,
                            const ModelOptions& options = {}, const GridOptions& grid = {});

// 10 %-of-peak support width of |psi|^2.
double correlation_width(const Waveform& w, double level = 0.1);

}  // namespace bisim
