// Serial reference vs OpenMP kernels: escape-time rendering and the
// step-distance sequence.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "bakerlab/dynamics.hpp"
#include "bakerlab/render.hpp"

using namespace bakerlab;

namespace {

RenderSpec spec_for(int side) {
  RenderSpec spec;
  spec.width = side;
  spec.height = side;
  return spec;
}

void BM_RenderSerial(benchmark::State& state) {
  const RenderSpec spec = spec_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(render_serial(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_RenderOpenMP(benchmark::State& state) {
  const RenderSpec spec = spec_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(render(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

// The cache is disabled so every iteration does the full oracle work.
void BM_StepDistanceSerial(benchmark::State& state) {
  const EntireMap f = EntireMap::fatou(1.0);
  for (auto _ : state) {
    DomainOracle oracle = escape_oracle(f);
    oracle.set_cache_enabled(false);
    benchmark::DoNotOptimize(step_distance_sequence_serial(f, 1.0, oracle, static_cast<int>(state.range(0))));
  }
}

void BM_StepDistanceOpenMP(benchmark::State& state) {
  const EntireMap f = EntireMap::fatou(1.0);
  for (auto _ : state) {
    DomainOracle oracle = escape_oracle(f);
    oracle.set_cache_enabled(false);
    benchmark::DoNotOptimize(step_distance_sequence(f, 1.0, oracle, static_cast<int>(state.range(0))));
  }
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_RenderSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RenderOpenMP)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepDistanceSerial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepDistanceOpenMP)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
