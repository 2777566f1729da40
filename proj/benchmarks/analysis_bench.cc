// Copyright 2026 The Storyboard Compiler Authors.
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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "storyboard/formatter.h"
#include "storyboard/infoflow.h"
#include "storyboard/interpreter.h"
#include "storyboard/parser.h"
#include "support/random_model.h"

namespace storyboard {
namespace {

std::vector<AppModel> models(int n) {
  std::mt19937_64 rng(42);
  std::vector<AppModel> out;
  for (int i = 0; i < n; ++i) out.push_back(testing::random_model(rng));
  return out;
}

void BM_Closure(benchmark::State& state) {
  const std::vector<AppModel> ms = models(64);
  std::vector<InfluenceGraph> graphs;
  for (const AppModel& m : ms) graphs.push_back(build_influences(m));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(closure(graphs[i++ % graphs.size()]));
}
BENCHMARK(BM_Closure);

void BM_Analyze(benchmark::State& state) {
  const std::vector<AppModel> ms = models(64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(analyze(ms[i++ % ms.size()]));
}
BENCHMARK(BM_Analyze);

void BM_ParseFormat(benchmark::State& state) {
  const std::string text = testing::read_fixture("fig3.sbd");
  for (auto _ : state) {
    ParseOutcome r = parse(text, "fig3.sbd");
    benchmark::DoNotOptimize(format(*r.model));
  }
}
BENCHMARK(BM_ParseFormat);

void BM_Run(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const AppModel m = testing::random_model(rng);
  const Scenario s = testing::random_scenario(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(run(m, s, 100));
}
BENCHMARK(BM_Run);

}  // namespace
}  // namespace storyboard

BENCHMARK_MAIN();
