// Copyright 2026 The policysim Authors
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

// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "policysim/optimize/batch.hpp"
#include "policysim/optimize/evaluator.hpp"
#include "policysim/scenario/fixture.hpp"
#include "policysim/scoring/norms.hpp"
#include "policysim/scoring/objective.hpp"
#include "policysim/sim/skims.hpp"

namespace policysim {
namespace {

const Scenario& grid(int dim) {
  static const Scenario small = generate_sioux_micro(1, 200, 6);
  static const Scenario large = generate_sioux_micro(1, 200, 24);
  return dim <= 6 ? small : large;
}

void BM_AllPairsSerial(benchmark::State& state) {
  const auto& net = grid(static_cast<int>(state.range(0))).network;
  const auto cost = free_flow_costs(net);
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_serial(net, kCarBit, cost));
  state.counters["nodes"] = static_cast<double>(net.num_nodes());
}

void BM_AllPairsParallel(benchmark::State& state) {
  const auto& net = grid(static_cast<int>(state.range(0))).network;
  const auto cost = free_flow_costs(net);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_parallel(net, kCarBit, cost, threads));
  state.counters["nodes"] = static_cast<double>(net.num_nodes());
}

struct BatchSetup {
  BatchSetup() : z(generate_sioux_micro(1, 300, 6)), spec(objective_preset("post_contest")) {
    NormStats norms;
    for (const auto& t : spec.terms) norms.entries[t.kpi] = NormEntry{1.0, 1.0, 2, {}};
    ev = std::make_unique<SimulationEvaluator>(z, spec, norms);
    ev->set_bau(1, kIterations, bau_kpis(z, 1, kIterations));
    Rng rng(3);
    for (int i = 0; i < 8; ++i) points.push_back(ev->space().sample(rng));
  }
  static constexpr int kIterations = 5;
  Scenario z;
  ObjectiveSpec spec;
  std::unique_ptr<SimulationEvaluator> ev;
  std::vector<Point> points;
};

BatchSetup& batch() {
  static BatchSetup b;
  return b;
}

void BM_BatchSerial(benchmark::State& state) {
  auto& b = batch();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_batch_serial(*b.ev, b.points, 0, 1, BatchSetup::kIterations));
  }
}

void BM_BatchParallel(benchmark::State& state) {
  auto& b = batch();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_batch_parallel(*b.ev, b.points, 0, 1, BatchSetup::kIterations, workers));
  }
}

BENCHMARK(BM_AllPairsSerial)->Arg(6)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllPairsParallel)->ArgsProduct({{6, 24}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace policysim

BENCHMARK_MAIN();
