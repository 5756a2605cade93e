// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "photomux/monte_carlo.hpp"
#include "photomux/optimizer.hpp"

namespace {

using namespace photomux;

const BulkTimeLoss kBulk{0.996, 0.97, 0.95, 1.0};

void BM_Distribution(benchmark::State& state) {
  const auto units = static_cast<std::uint64_t>(state.range(0));
  const DistributionEvaluator eval(kBulk, 1.0, units);
  for (auto _ : state) benchmark::DoNotOptimize(eval.distribution(11.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Distribution)->RangeMultiplier(8)->Range(8, 32768)->Complexity();

void BM_SinglePhoton(benchmark::State& state) {
  const DistributionEvaluator eval(kBulk, 0.2, 1024);
  for (auto _ : state) benchmark::DoNotOptimize(eval.single_photon(33.0));
}
BENCHMARK(BM_SinglePhoton);

void BM_OptimizeLambda(benchmark::State& state) {
  const DistributionEvaluator eval(kBulk, 1.0, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(optimize_lambda(eval));
}
BENCHMARK(BM_OptimizeLambda)->Arg(128)->Arg(32768)->Unit(benchmark::kMillisecond);

void BM_OptimizeUnits(benchmark::State& state) {
  const auto range = power_of_two_range(1, 10);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_units(SpatialLoss{0.95, 1.0}, 1.0, range));
}
BENCHMARK(BM_OptimizeUnits)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const MultiplexerSpec spec{kBulk, 1.0, 128, 6.6};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate({spec, 100'000, seed++}));
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
