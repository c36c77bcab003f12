// OpenMP kernels against their serial references.
//   cdsnet_bench --benchmark_filter=Sweep
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "cdsnet/micro_oracle.hpp"
#include "cdsnet/risk_metrics.hpp"

using namespace cdsnet;

namespace {

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = builtin_scenario("S4");
  const auto grid = Xi0Grid::standard(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(spec, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = builtin_scenario("S4");
  const auto grid = Xi0Grid::standard(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(spec, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

const MicroWorld& world() {
  static const MicroWorld w = [] {
    MicroConfig cfg;
    return sample_world(builtin_scenario("S7"), cfg);
  }();
  return w;
}

void BM_PathSerial(benchmark::State& state) {
  const auto& w = world();
  SimulationOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_path_serial(w, -1.0, opt));
  state.SetItemsProcessed(state.iterations() * w.node_count() * (w.horizon + 1));
}

void BM_PathParallel(benchmark::State& state) {
  const auto& w = world();
  SimulationOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_path(w, -1.0, opt));
  state.SetItemsProcessed(state.iterations() * w.node_count() * (w.horizon + 1));
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(201)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(201)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PathSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PathParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
