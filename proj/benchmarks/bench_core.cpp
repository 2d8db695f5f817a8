#include <benchmark/benchmark.h>

#include <vector>

#include "shapecorr/correlations.hpp"
#include "shapecorr/isotonic.hpp"
#include "shapecorr/perm_stats.hpp"
#include "shapecorr/permutation.hpp"
#include "shapecorr/rng.hpp"
#include "shapecorr/sample.hpp"

using namespace shapecorr;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    Rng rng({seed, 0});
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_double();
    return v;
}

void BM_pava(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> v = random_values(n, 1);
    for (auto _ : state) {
        IsotonicFit fit = pava(v);
        benchmark::DoNotOptimize(fit.fitted.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_pava)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

void BM_correlation_report(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    Sample s(random_values(n, 2), random_values(n, 3));
    for (auto _ : state) {
        CorrelationReport rep = correlation_report(s, {7, 0});
        benchmark::DoNotOptimize(rep.cmon);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_correlation_report)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);

void BM_bohnenblust_spitzer(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    PerturbedValues values = PerturbedValues::for_grid(n);
    Permutation perm = random_permutation(n, RngSeed{11, 0});
    for (auto _ : state) {
        Permutation out = bohnenblust_spitzer(perm, values);
        benchmark::DoNotOptimize(out.images().data());
    }
}
BENCHMARK(BM_bohnenblust_spitzer)->Arg(100)->Arg(500)->Arg(1000);

void BM_null_pair_replicate(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    StandardizedGrid grid = standardized_grid(n);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        Rng rng({13, stream++});
        Permutation perm = random_permutation(n, rng);
        benchmark::DoNotOptimize(isotonic_sum_sq(perm, grid));
    }
}
BENCHMARK(BM_null_pair_replicate)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
