// Copyright 2026 The kmetric Authors
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

#include "kmetric/families.hpp"
#include "kmetric/random_spaces.hpp"
#include "kmetric/solver.hpp"

namespace {

using namespace kmetric;

void BM_AllDistinguishers(benchmark::State& state) {
  auto space = make_space(parse_family("grid-ball:2," + std::to_string(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(all_distinguishers(space));
  state.SetLabel(std::to_string(space.size()) + " points");
}
BENCHMARK(BM_AllDistinguishers)->DenseRange(2, 6, 2);

void BM_PetersenSequence(benchmark::State& state) {
  auto space = make_space(parse_family("petersen"));
  for (auto _ : state) benchmark::DoNotOptimize(dimension_sequence(space));
}
BENCHMARK(BM_PetersenSequence);

void BM_CycleSequence(benchmark::State& state) {
  auto space = make_space(parse_family("cycle:" + std::to_string(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(dimension_sequence(space));
}
BENCHMARK(BM_CycleSequence)->Arg(11)->Arg(16)->Arg(24);

void BM_FreeBallDim1(benchmark::State& state) {
  auto space = make_space(parse_family("free-ball:2," + std::to_string(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(dim_exact(space, 1));
}
BENCHMARK(BM_FreeBallDim1)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_GridBallDimK(benchmark::State& state) {
  auto space = make_space(parse_family("grid-ball:2,4"));
  const auto map = all_distinguishers(space);
  for (auto _ : state) benchmark::DoNotOptimize(dim_exact(map, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GridBallDimK)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_RandomGraphDim(benchmark::State& state, bool parallel) {
  InstanceGenerator gen(1);
  auto space = shortest_path_metric(gen.connected_graph(static_cast<std::size_t>(state.range(0))));
  const auto map = all_distinguishers(space);
  SolveOptions opts;
  opts.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(dim_exact(map, 2, opts));
}
BENCHMARK_CAPTURE(BM_RandomGraphDim, sequential, false)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RandomGraphDim, parallel, true)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_BruteForceOracle(benchmark::State& state) {
  InstanceGenerator gen(2);
  auto space = shortest_path_metric(gen.connected_graph(12));
  for (auto _ : state) benchmark::DoNotOptimize(dim_bruteforce(space, 2));
}
BENCHMARK(BM_BruteForceOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
