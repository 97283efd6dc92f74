// Copyright 2026 The percldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "percldp/binomial.hpp"
#include "percldp/chain.hpp"
#include "percldp/exact_dp.hpp"
#include "percldp/graph.hpp"
#include "percldp/variational.hpp"

using namespace percldp;

static void BM_PiAt(benchmark::State& state) {
  const std::int64_t t = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(pi_at(t, 1e-4, 2));
}
BENCHMARK(BM_PiAt)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_SimulateChain(benchmark::State& state) {
  const ModelParams model(state.range(0), 1e-4, 2);
  const ChainParams params = make_chain_params(model, 25);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_chain(params, seed++));
}
BENCHMARK(BM_SimulateChain)->Arg(1000000);

static void BM_ExactDistribution(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const ModelParams model(n, p_for_critical_time(n, 2, std::sqrt(static_cast<double>(n))), 2);
  const ChainParams params = make_chain_params(model, initial_size_for(0.5, model));
  for (auto _ : state) benchmark::DoNotOptimize(exact_distribution(params, truncated_cap(params, 3.0)));
}
BENCHMARK(BM_ExactDistribution)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_MaximizeTrajectory(benchmark::State& state) {
  TrajectoryProblem pr;
  pr.alpha = 0.5;
  pr.beta = 1.0;
  pr.r = 2;
  pr.m = static_cast<int>(state.range(0));
  const int levels = lattice_levels(pr, 1.0 / 2000.0);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_trajectory(pr, levels));
}
BENCHMARK(BM_MaximizeTrajectory)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Percolate(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const Graph graph = sample_gnp(n, 10.0 / n * std::log(static_cast<double>(n)), 7);
  std::vector<Vertex> initial(static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
  std::iota(initial.begin(), initial.end(), Vertex{0});
  for (auto _ : state) benchmark::DoNotOptimize(percolate(graph, initial, 2));
}
BENCHMARK(BM_Percolate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
