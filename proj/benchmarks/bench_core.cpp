#include <benchmark/benchmark.h>

#include <cmath>

#include "qednp/emitter.hpp"
#include "qednp/jc.hpp"
#include "qednp/phonon.hpp"
#include "qednp/quantum_dot.hpp"
#include "qednp/resonance.hpp"
#include "qednp/units.hpp"

using namespace qednp;

namespace {

const double kW0 = wavelength_to_omega(950.0);

EmitterConfig wide() { return EmitterConfig{kW0, 1.0, 0.5 * kW0, 1.5 * kW0, 0.0}; }

}  // namespace

// Closed-form kernel: O(N) recursive convolution.
static void BM_VolterraLorentzian(benchmark::State& state) {
    const LorentzianCavity cav{kW0, 5e4, 50.0};
    const auto cfg = wide();
    const double t_end = 2.0;
    const double dt = t_end / static_cast<double>(state.range(0));
    const auto k = build_kernel(cav, cfg, dt, t_end);
    for (auto _ : state) benchmark::DoNotOptimize(solve_volterra(k, cfg, t_end, dt));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VolterraLorentzian)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

// Sampled kernel: O(N^2) direct sum.
static void BM_VolterraSampled(benchmark::State& state) {
    const LorentzianCavity cav{kW0, 5e4, 50.0};
    const auto cfg = wide();
    const double t_end = 0.5;
    const double dt = t_end / static_cast<double>(state.range(0));
    auto k = build_kernel(cav, cfg, dt, t_end);
    k.exp_terms.clear();
    for (auto _ : state) benchmark::DoNotOptimize(solve_volterra(k, cfg, t_end, dt));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VolterraSampled)->RangeMultiplier(2)->Range(1 << 9, 1 << 12)->Complexity(benchmark::oNSquared);

static void BM_JcSpectra(benchmark::State& state) {
    const auto p = from_profile(LorentzianCavity{kW0, 1e5, 100.0}, 1.0, 0.0);
    const auto grid = default_jc_grid(p, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(jc_spectra(p, grid));
}
BENCHMARK(BM_JcSpectra)->Arg(4001)->Arg(20001);

static void BM_MollowSpectrum(benchmark::State& state) {
    const DriveParams d{20.0, 1.0, 0.0};
    const auto grid = FrequencyGrid::uniform(-60.0, 60.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mollow_spectrum(d, grid));
}
BENCHMARK(BM_MollowSpectrum)->Arg(2001);

static void BM_IbmSpectrum(benchmark::State& state) {
    PhononParams p;
    p.temperature = 10.0;
    const double span = meV_to_rad_ns(12.0);
    const auto grid = FrequencyGrid::dense_near(-span, span, static_cast<std::size_t>(state.range(0)), 0.0, 0.002);
    for (auto _ : state) benchmark::DoNotOptimize(ibm_spectrum(p, 1.0, grid));
}
BENCHMARK(BM_IbmSpectrum)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);

static void BM_BiexpFit(benchmark::State& state) {
    const ExcitonRates r{1.0, 0.1, 0.05, 0.0};
    const auto curve = synth_decay(r, 0.5, 0.5, 2e4, 160.0, static_cast<std::size_t>(state.range(0)), true, 1);
    for (auto _ : state) benchmark::DoNotOptimize(fit_biexp(curve, ExcitonRates{0.5, 0.3, 0.2, 0.0}));
}
BENCHMARK(BM_BiexpFit)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_PhononRateSweep(benchmark::State& state) {
    const JcParams jc{20.0, 100.0, 1.0, 0.0, 0.0};
    PhononParams p;
    p.temperature = 20.0;
    for (auto _ : state) {
        double acc = 0.0;
        for (int i = -150; i <= 150; ++i) acc += phonon_purcell_rate(p, jc, meV_to_rad_ns(0.02 * i)).rate;
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_PhononRateSweep);

BENCHMARK_MAIN();
