#include <algorithm>

#include <benchmark/benchmark.h>

#include "ppspec/hawkes.hpp"
#include "ppspec/periodogram.hpp"
#include "ppspec/rse.hpp"
#include "ppspec/taper.hpp"
#include "ppspec/tuning.hpp"

namespace {

// Periodogram of preset (a) with m = 50 trials of 200 s at the second Fourier frequency.
ppspec::SpectralMatrix preset_periodogram(std::size_t p) {
    const auto model = ppspec::preset(ppspec::Scenario::a, p);
    const double horizon = 200.0 * 50;
    const auto data = ppspec::simulate(model, horizon, 50, 7);
    const ppspec::TaperSet taper(50, horizon);
    return ppspec::periodogram(data, taper, ppspec::fourier_frequencies(horizon, 50, 2).back());
}

void BM_LassoAdmm(benchmark::State& state) {
    const auto s = preset_periodogram(static_cast<std::size_t>(state.range(0)));
    ppspec::RSEConfig cfg;
    cfg.lambda = 0.02;
    std::size_t iterations = 0;
    for (auto _ : state) {
        const auto r = ppspec::lasso_admm(s, cfg);
        iterations = r.iterations;
        benchmark::DoNotOptimize(r.theta);
    }
    state.counters["admm_iters"] = static_cast<double>(iterations);
}
BENCHMARK(BM_LassoAdmm)->Arg(12)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_RidgeEstimate(benchmark::State& state) {
    const auto s = preset_periodogram(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppspec::ridge_estimate(s, 0.05));
    }
}
BENCHMARK(BM_RidgeEstimate)->Arg(12)->Arg(48);

void BM_EbicPath(benchmark::State& state) {
    const auto s = preset_periodogram(12);
    double scale = 0.0;
    for (std::size_t q = 0; q < s.dim(); ++q) {
        scale = std::max(scale, s.matrix.diag(q));
    }
    const auto grid = ppspec::default_lambda_grid(scale, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppspec::select_ebic(s, grid, ppspec::RSEConfig{}));
    }
}
BENCHMARK(BM_EbicPath)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

} // namespace
