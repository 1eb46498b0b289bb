// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include <benchmark/benchmark.h>

#include <vector>

#include "deconv/ecf.hpp"
#include "deconv/estimators.hpp"
#include "deconv/models.hpp"
#include "deconv/selector.hpp"

namespace {

using namespace deconv;

Sample observations(std::size_t n, double s)
{
  return simulate_observations(SignalModel::laplace5(0.1), NoiseModel(s), n, 7);
}

void BM_EcfBatch(benchmark::State& state)
{
  auto y = observations(static_cast<std::size_t>(state.range(0)), 1.0);
  std::vector<double> us;
  for (int k = 1; k <= 64; ++k)
    us.push_back(0.05 * k);
  for (auto _ : state)
    benchmark::DoNotOptimize(ecf_batch(y, us));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 64);
}
BENCHMARK(BM_EcfBatch)->Arg(500)->Arg(5000)->Arg(50000);

void BM_PairKernel(benchmark::State& state)
{
  double s = static_cast<double>(state.range(0)) / 2.0;
  double h = bandwidth(BandwidthSpec::density(1.0, 0.6), 100000, s);
  double d = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_kernel(d, s, h, {}));
    d += 0.01;
  }
}
BENCHMARK(BM_PairKernel)->DenseRange(1, 4);

void BM_QuadFunctional(benchmark::State& state)
{
  auto y = observations(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(quad_functional(y, 1.0, BandwidthSpec::density(1.0, 0.6), {}));
}
BENCHMARK(BM_QuadFunctional)->Arg(500)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_SelectIndex(benchmark::State& state)
{
  auto y = observations(static_cast<std::size_t>(state.range(0)), 1.5);
  auto config = SelectorConfig::simulation_default();
  for (auto _ : state)
    benchmark::DoNotOptimize(select_index(y, config));
}
BENCHMARK(BM_SelectIndex)->Arg(500)->Arg(5000)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
