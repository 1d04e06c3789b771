#include <benchmark/benchmark.h>

#include "ppspec/hermitian.hpp"
#include "ppspec/random.hpp"

namespace {

ppspec::HermitianMatrix random_pd(std::size_t p, std::uint64_t seed) {
    ppspec::Rng rng(seed);
    ppspec::ComplexMatrix a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            a(i, j) = {rng.normal(), rng.normal()};
        }
    }
    const ppspec::ComplexMatrix identity = ppspec::ComplexMatrix::Identity(a.rows(), a.cols());
    return ppspec::HermitianMatrix::hermitian_part(a * a.adjoint() + static_cast<double>(p) * identity);
}

void BM_EigHermitian(benchmark::State& state) {
    const auto h = random_pd(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppspec::eig_hermitian(h));
    }
}
BENCHMARK(BM_EigHermitian)->RangeMultiplier(2)->Range(4, 96);

void BM_InversePd(benchmark::State& state) {
    const auto h = random_pd(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppspec::inverse_pd(h));
    }
}
BENCHMARK(BM_InversePd)->RangeMultiplier(2)->Range(4, 96);

void BM_ConditionNumber(benchmark::State& state) {
    const auto h = random_pd(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppspec::condition_number(h));
    }
}
BENCHMARK(BM_ConditionNumber)->Arg(12)->Arg(48);

} // namespace
