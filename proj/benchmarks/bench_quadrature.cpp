#include "mvsol/mvs.hpp"
#include "mvsol/riemann.hpp"

#include <benchmark/benchmark.h>

using namespace mvsol;

static void BM_PolygonIntegration(benchmark::State& state) {
    const Polygon box{{0.0, -0.5}, {1.0, -0.5}, {1.0, 0.5}, {0.0, 0.5}};
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_polygon(
            [](double t, double x) { return bump_marginal(t * t + x * x); }, box, order));
    }
}
BENCHMARK(BM_PolygonIntegration)->Arg(4)->Arg(8)->Arg(16);

static void BM_WeakResidual(benchmark::State& state) {
    const AtomicYoungMeasure nu = measure_from_fan(self_similar_shock(RiemannData{1, 1, 2}));
    TestFunction phi;
    phi.center_t = 0.45;
    phi.center_x1 = 0.45 * shock_constants(RiemannData{1, 1, 2}).shock_speed;
    phi.radius = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(weak_residual_quadrature(nu, phi));
    }
}
BENCHMARK(BM_WeakResidual);

static void BM_LineIntegral(benchmark::State& state) {
    TestFunction phi;
    phi.center_t = 0.5;
    phi.center_x1 = 0.0;
    phi.radius = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(line_integral(phi, 0.2));
    }
}
BENCHMARK(BM_LineIntegral);

BENCHMARK_MAIN();
