#include "mvsol/riemann.hpp"
#include "mvsol/svd.hpp"
#include "mvsol/wild.hpp"

#include <benchmark/benchmark.h>

using namespace mvsol;

static void BM_ShockConstruction(benchmark::State& state) {
    const RiemannData d{1.0, 1.0, 2.0};
    for (auto _ : state) {
        const FanSolution fan = self_similar_shock(d);
        benchmark::DoNotOptimize(rh_residual(fan));
    }
}
BENCHMARK(BM_ShockConstruction);

static void BM_MarginsBisection(benchmark::State& state) {
    const RiemannData d{1.0, 1.0, 2.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(margins_bisection(d));
    }
}
BENCHMARK(BM_MarginsBisection);

static void BM_SvdSmall(benchmark::State& state) {
    const std::vector<std::vector<double>> A{
        {1.0, 0.2, -0.3}, {0.0, 2.0, 0.4}, {0.5, -0.7, 1.5}, {0.1, 0.9, -1.1}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(svd_small(A));
    }
}
BENCHMARK(BM_SvdSmall);

BENCHMARK_MAIN();
