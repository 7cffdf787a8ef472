#include "mvsol/rigidity.hpp"

#include <benchmark/benchmark.h>

using namespace mvsol;

namespace {

PlaneWaveSequence off_cone_sequence() {
    const ExtendedState z1 = lift_extended(ConservativeState{1.0, 1.0, 0.0, 1.5});
    const ExtendedState z2 = lift_extended(ConservativeState{2.0, 1.0, 0.0, 0.75});
    PlaneWaveSequence s;
    s.base.assign(z1.z.begin(), z1.z.end());
    s.amplitude.resize(8);
    for (int k = 0; k < 8; ++k) s.amplitude[k] = z2.z[k] - z1.z[k];
    s.direction = {0.0, 1.0, 0.0};
    return s;
}

} // namespace

static void BM_ConstraintResidual(benchmark::State& state) {
    const FirstOrderOperator op = euler_operator();
    const std::vector<RigidityBump> dict = default_rigidity_dictionary();
    PlaneWaveSequence s = off_cone_sequence();
    s.frequency = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(constraint_residual(s, op, dict));
    }
}
BENCHMARK(BM_ConstraintResidual)->Arg(4)->Arg(64)->Arg(256);

static void BM_YoungEstimate(benchmark::State& state) {
    PlaneWaveSequence s = off_cone_sequence();
    s.frequency = 64;
    GridSpec grid;
    grid.cells = static_cast<int>(state.range(0));
    const SampleField field = sample_sequence(s, grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(young_estimate(field));
    }
}
BENCHMARK(BM_YoungEstimate)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
