#include "bisim/biphoton.hpp"
#include "bisim/config.hpp"
#include "bisim/phasematch.hpp"
#include "bisim/pipeline.hpp"
#include "bisim/transform.hpp"

#include <benchmark/benchmark.h>

using namespace bisim;

namespace {

const ScenarioConfig& group_delay_scenario()
{
    static const ScenarioConfig cfg = preset("fig3");
    return cfg;
}

UniformAxis axis_for(std::size_t n)
{
    return spectral_axis(64.0 * group_delay_scenario().medium.gamma13, n);
}

void BM_KappaSpectrum(benchmark::State& state)
{
    const auto& c = group_delay_scenario();
    const UniformAxis axis = axis_for(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kappa_spectrum(axis, c.medium, c.drive));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KappaSpectrum)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_ExactPhaseMatching(benchmark::State& state)
{
    const auto& c = group_delay_scenario();
    const UniformAxis axis = axis_for(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(detuning_function(PhiVariant::Exact, axis, c.medium, c.drive));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactPhaseMatching)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_DelayTransform(benchmark::State& state)
{
    const auto& c = group_delay_scenario();
    const ComplexSpectrum s =
        SpectrumModel(c.medium, c.drive, c.model).sample(axis_for(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(to_delay_domain(s, c.medium.length));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DelayTransform)->RangeMultiplier(2)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_DirectConvolution(benchmark::State& state)
{
    const auto& c = group_delay_scenario();
    const UniformAxis axis = axis_for(static_cast<std::size_t>(state.range(0)));
    const Waveform kappa_t = kappa_kernel(kappa_spectrum(axis, c.medium, c.drive));
    const Waveform phi_t = phi_kernel(detuning_function(PhiVariant::Exact, axis, c.medium, c.drive).values);
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi_by_convolution(kappa_t, phi_t, c.medium.length));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirectConvolution)->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Complexity(benchmark::oNSquared);

void BM_CoincidenceHistogram(benchmark::State& state)
{
    const auto& c = group_delay_scenario();
    const PipelineResult r = run_pipeline(c.medium, c.drive, c.model, c.grid);
    const double tau_g = group_delay(c.medium, c.drive);
    const double t_c = tau_g / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(coincidence_histogram(r.psi, t_c, -tau_g, 3.0 * tau_g));
    }
}
BENCHMARK(BM_CoincidenceHistogram)->Arg(16)->Arg(256)->Arg(4096);

void BM_Pipeline(benchmark::State& state)
{
    const ScenarioConfig c = preset(state.range(0) == 2 ? "fig2" : "fig3");
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_pipeline(c.medium, c.drive, c.model, c.grid));
    }
}
BENCHMARK(BM_Pipeline)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
