#include "bisim/pipeline.hpp"

#include "bisim/biphoton.hpp"
#include "bisim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bisim {

std::string_view to_string(KappaModel k) noexcept
{
    return k == KappaModel::Full ? "full" : "constant";
}

std::optional<KappaModel> parse_kappa_model(std::string_view name) noexcept
{
    if (name == "full") {
        return KappaModel::Full;
    }
    if (name == "constant") {
        return KappaModel::Constant;
    }
    return std::nullopt;
}

SpectrumModel::SpectrumModel(const MediumParams& m, const DriveParams& d,
                             const ModelOptions& options)
    : m_(m), d_(d), options_(options), phi_(m, d, options.phi, options.conjugate_stokes),
      kappa0_(kappa(0.0, m, d))
{
}

complex SpectrumModel::operator()(double omega) const
{
    const complex k = options_.kappa == KappaModel::Full ? kappa(omega, m_, d_) : kappa0_;
    return k * phi_(omega);
}

ComplexSpectrum SpectrumModel::sample(const UniformAxis& grid) const
{
    return sample_spectrum(grid, *this, d_.omega_as);
}

double required_delay_half_span(const MediumParams& m, const DriveParams& d,
                                const ModelOptions& options)
{
    const DerivedScales s = characteristic_scales(m, d);
    double phi_extent = 0.0;
    switch (options.phi) {
    case PhiVariant::Unity:
        break;
    case PhiVariant::ApproxPole:
        phi_extent = 16.0 * s.tau_g / (2.0 * s.alpha * m.length);
        break;
    default:
        phi_extent = s.tau_g;
        break;
    }
    double kappa_extent = 0.0;
    if (options.kappa == KappaModel::Full) {
        const double slowest = s.rabi_real ? s.gamma_e : s.gamma_e - 0.5 * s.beta_e;
        kappa_extent = 16.0 / (2.0 * slowest);
    }
    return std::max({2.0 * phi_extent + 5.0 * s.tau_e, phi_extent + kappa_extent,
                     8.0 * s.tau_e});
}

double base_half_span(const MediumParams& m, const DriveParams& d, const ModelOptions& options)
{
    const DerivedScales s = characteristic_scales(m, d);
    double span = std::max(40.0 * s.gamma_e, 8.0 * s.omega_e);
    if (options.phi != PhiVariant::Unity && std::isfinite(s.tau_g) && s.tau_g > 0.0) {
        span = std::max(span, 64.0 * pi / s.tau_g);
    }
    return 0.5 * span;
}

namespace {

double edge_ratio(const ComplexSpectrum& s)
{
    const std::size_t n = s.values.size();
    const std::size_t band = std::max<std::size_t>(1, n / 64);
    double peak = 0.0;
    double edge = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(s.values[k]);
        peak = std::max(peak, p);
        if (k < band || k >= n - band) {
            edge = std::max(edge, p);
        }
    }
    return peak > 0.0 ? edge / peak : 0.0;
}

std::size_t samples_for(double half_span, double delay_half_span, const GridOptions& g)
{
    if (g.samples != 0) {
        return g.samples;
    }
    // dtau = pi / W, so covering [-T, T] takes 2 T W / pi samples
    const double needed = std::ceil(2.0 * delay_half_span * half_span / pi);
    const double capped = std::min(needed, static_cast<double>(g.max_samples));
    return next_power_of_two(std::max(g.min_samples, static_cast<std::size_t>(capped)));
}

}  // namespace

PipelineResult run_pipeline(const MediumParams& m, const DriveParams& d,
                            const ModelOptions& options, const GridOptions& grid)
{
    m.validate();
    d.validate();
    if (grid.samples != 0 && (!is_power_of_two(grid.samples) || grid.samples < 16)) {
        throw Error(ErrorKind::GridMismatch, "grid samples must be a power of two >= 16");
    }
    const SpectrumModel model(m, d, options);
    const double delay_span = required_delay_half_span(m, d, options);

    GridPlan plan{base_half_span(m, d, options), 0, delay_span, false};
    if (grid.samples == 0) {
        const double budget = pi * static_cast<double>(grid.max_samples) / (2.0 * delay_span);
        plan.half_span = std::min(plan.half_span, budget);
    }
    plan.samples = samples_for(plan.half_span, delay_span, grid);
    ComplexSpectrum spectrum = model.sample(spectral_axis(plan.half_span, plan.samples));
    for (int iteration = 0; iteration < 40; ++iteration) {
        if (edge_ratio(spectrum) <= grid.tail_tolerance) {
            plan.tail_target_met = true;
            break;
        }
        const double wider = 2.0 * plan.half_span;
        const std::size_t n = samples_for(wider, delay_span, grid);
        const bool over_budget = grid.samples == 0 && 2.0 * delay_span * wider / pi >
                                                          static_cast<double>(grid.max_samples);
        const bool too_short = grid.samples != 0 && pi * static_cast<double>(n) / wider <
                                                        2.0 * delay_span;
        if (over_budget || too_short) {
            break;
        }
        plan.half_span = wider;
        plan.samples = n;
        spectrum = model.sample(spectral_axis(plan.half_span, plan.samples));
    }

    PipelineResult result;
    result.grid = plan;
    result.psi = psi_from_spectrum(spectrum, m.length);
    result.rate_spectral = pair_rate(spectrum, m.length);
    result.rate_temporal = pair_rate(result.psi);
    result.kappa_phi = std::move(spectrum);
    return result;
}

double correlation_width(const Waveform& w, double level)
{
    const std::vector<double> g = w.g2();
    if (g.empty()) {
        return 0.0;
    }
    const double peak = *std::max_element(g.begin(), g.end());
    if (!(peak > 0.0)) {
        return 0.0;
    }
    std::size_t first = g.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] >= level * peak) {
            first = std::min(first, i);
            last = i;
        }
    }
    return w.tau[last] - w.tau[first];
}

}  // namespace bisim
