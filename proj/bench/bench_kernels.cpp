// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "gsteer/catalog.hpp"

using namespace gsteer;

namespace {

QuantifiedCondition bench_condition() {
  return steering_annihilation_condition(random_channel(ModePartition(1, 1), 11));
}

SolverConfig bench_config() {
  SolverConfig cfg;
  cfg.samples = 20000;
  cfg.starts = 32;
  return cfg;
}

void BM_DecideSerial(benchmark::State& state) {
  const QuantifiedCondition q = bench_condition();
  for (auto _ : state) benchmark::DoNotOptimize(serial::decide(q, bench_config()));
}

void BM_DecideParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const QuantifiedCondition q = bench_condition();
  for (auto _ : state) benchmark::DoNotOptimize(decide(q, bench_config()));
}

void BM_GridSerial(benchmark::State& state) {
  const QuantifiedCondition q = bench_condition();
  for (auto _ : state) benchmark::DoNotOptimize(serial::grid_sweep(q, 100000));
}

void BM_GridParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const QuantifiedCondition q = bench_condition();
  for (auto _ : state) benchmark::DoNotOptimize(grid_sweep(q, 100000));
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const GaussianChannel c = catalog::annihilating_not_breaking();
  for (auto _ : state) benchmark::DoNotOptimize(serial::monte_carlo_sa_oracle(c, 10000, 0));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const GaussianChannel c = catalog::annihilating_not_breaking();
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_sa_oracle(c, 10000, 0));
}

}  // namespace

BENCHMARK(BM_DecideSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecideParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
