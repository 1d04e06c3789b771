#include <benchmark/benchmark.h>

#include "ppspec/hawkes.hpp"
#include "ppspec/periodogram.hpp"
#include "ppspec/random.hpp"
#include "ppspec/taper.hpp"

namespace {

void BM_SimulatePreset(benchmark::State& state) {
    const auto scenario = static_cast<ppspec::Scenario>(state.range(0));
    const auto model = ppspec::preset(scenario, 12);
    std::uint64_t seed = 0;
    std::size_t events = 0;
    for (auto _ : state) {
        const auto data = ppspec::simulate(model, 2000.0, 10, ++seed);
        events += data.total_events();
        benchmark::DoNotOptimize(data);
    }
    state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SimulatePreset)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Periodogram(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const auto data = ppspec::simulate(ppspec::HawkesModel::poisson(p, 1.0), 1000.0, 10, 3);
    const auto taper = ppspec::TaperSet::for_data(data);
    const double w = ppspec::fourier_frequencies(1000.0, 10, 1).front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppspec::periodogram(data, taper, w));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * data.total_events()));
}
BENCHMARK(BM_Periodogram)->Arg(2)->Arg(12)->Arg(48);

void BM_SmoothedPeriodogram(benchmark::State& state) {
    const auto data = ppspec::simulate(ppspec::HawkesModel::poisson(12, 5.0), 200.0, 20, 4);
    const auto taper = ppspec::TaperSet::for_data(data);
    const auto band = ppspec::band_frequencies(taper, 0.0, static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppspec::smoothed_periodogram(data, taper, band));
    }
    state.counters["frequencies"] = static_cast<double>(band.frequencies.size());
}
BENCHMARK(BM_SmoothedPeriodogram)->Arg(1)->Arg(4);

} // namespace
