// Copyright 2026 The Shaplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "shaplab/coalition.h"
#include "shaplab/dataset.h"
#include "shaplab/game.h"
#include "shaplab/models.h"
#include "shaplab/precedence.h"
#include "shaplab/rng.h"
#include "shaplab/solvers.h"
#include "shaplab/value_functions.h"

namespace shaplab {
namespace {

// A cheap nonlinear game so the solver, not the oracle, dominates.
CoalitionGame SmoothGame(int n) {
  return CoalitionGame(n, [](const Coalition& s) {
    const double k = static_cast<double>(s.size());
    return std::sqrt(k) + 0.1 * static_cast<double>(s.bits() % 7);
  });
}

void BM_ExactSubsets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    // Fresh game each time: include oracle fills, as a real solve would.
    benchmark::DoNotOptimize(ExactShapleySubsets(SmoothGame(n)));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ExactSubsets)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

void BM_ExactPermutations(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CoalitionGame game = SmoothGame(n);
  for (auto _ : state) benchmark::DoNotOptimize(ExactShapleyPermutations(game));
}
BENCHMARK(BM_ExactPermutations)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_SampledShapley(benchmark::State& state) {
  const CoalitionGame game = SmoothGame(20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampledShapley(game, state.range(0), 7));
  }
}
BENCHMARK(BM_SampledShapley)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_AsymmetricChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CoalitionGame game = SmoothGame(n);
  const PrecedenceOrder order(n, {{0, 1}, {1, 2}});
  for (auto _ : state) benchmark::DoNotOptimize(AsymmetricShapley(game, order));
}
BENCHMARK(BM_AsymmetricChain)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_MarginalJointFullPass(benchmark::State& state) {
  const int d = 8;
  const CounterRng rng(3);
  std::vector<std::vector<double>> rows(state.range(0), std::vector<double>(d));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int j = 0; j < d; ++j) rows[r][j] = rng.Normal(r, j);
  }
  std::vector<std::string> names;
  for (int j = 0; j < d; ++j) names.push_back("x" + std::to_string(j));
  const TabularDataset data(names, rows);
  auto model = std::make_shared<LinearModel>(0.5, std::vector<double>(d, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ExactShapleySubsets(BuildInterventionalGame(model, data, rows[0], {})));
  }
}
BENCHMARK(BM_MarginalJointFullPass)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace shaplab

BENCHMARK_MAIN();
