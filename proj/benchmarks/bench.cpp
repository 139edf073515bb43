#include <benchmark/benchmark.h>

#include "cmcflow/flow.hpp"
#include "cmcflow/spectral.hpp"

namespace {

using namespace cmcflow;

const MetricModel kModel = MetricModel::schwarzschild(1.0);

GraphSurface bench_surface(int l_max) {
  GraphSurface s = GraphSurface::sphere(Vec3::Zero(), 20.0, l_max);
  s.perturb(2, 0, 0.2).perturb(1, 1, 0.1);
  return s;
}

void BM_FundamentalForms(benchmark::State& state) {
  const GraphSurface surface = bench_surface(int(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fundamental_forms(kModel, surface, false));
}
BENCHMARK(BM_FundamentalForms)->Arg(8)->Arg(16)->Arg(24);

void BM_OperatorAssembly(benchmark::State& state) {
  const GraphSurface surface = bench_surface(int(state.range(0)));
  const SurfaceFields fields = fundamental_forms(kModel, surface, true);
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_operators(fields, surface.l_max));
}
BENCHMARK(BM_OperatorAssembly)->Arg(8)->Arg(16);

void BM_Eigensystem(benchmark::State& state) {
  const GraphSurface surface = bench_surface(int(state.range(0)));
  const SurfaceFields fields = fundamental_forms(kModel, surface, true);
  const OperatorMatrices matrices = assemble_operators(fields, surface.l_max);
  for (auto _ : state)
    benchmark::DoNotOptimize(laplace_eigensystem(matrices, fields, 9));
}
BENCHMARK(BM_Eigensystem)->Arg(8)->Arg(16);

void BM_FlowStep(benchmark::State& state) {
  const GraphSurface surface = bench_surface(int(state.range(0)));
  FlowConfig config;
  for (auto _ : state) {
    state.PauseTiming();
    FlowState flow_state = init_state(surface, kModel, config);
    state.ResumeTiming();
    step(flow_state, config, kModel);
  }
}
BENCHMARK(BM_FlowStep)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
