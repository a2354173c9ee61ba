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

#include "policysim/optimize/evaluator.hpp"

#include <chrono>

#include "policysim/common/error.hpp"
#include "policysim/scoring/norms.hpp"
#include "policysim/udi/rules.hpp"

namespace policysim {

SimulationEvaluator::SimulationEvaluator(const Scenario& z, ObjectiveSpec spec, NormStats norms, int incentive_slots)
    : z_(z), template_(z, incentive_slots), spec_(std::move(spec)), norms_(std::move(norms)) {
  for (const auto& term : spec_.terms) norms_.at(term.kpi);
}

void SimulationEvaluator::set_bau(uint64_t seed, int iterations, const KpiVector& bau) {
  std::lock_guard<std::mutex> lock(mutex_);
  bau_[{seed, iterations}] = bau;
}

KpiVector SimulationEvaluator::bau(uint64_t seed, int iterations) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = bau_.find({seed, iterations});
    if (it != bau_.end()) return it->second;
  }
  const KpiVector k = bau_kpis(z_, seed, iterations);
  std::lock_guard<std::mutex> lock(mutex_);
  return bau_.emplace(std::make_pair(seed, iterations), k).first->second;
}

ScoreReport SimulationEvaluator::report(const Point& p, uint64_t seed, int iterations) const {
  const DecisionVector d = template_.decode(p);
  const auto violations = validate(d, z_);
  if (!violations.empty()) {
    throw InfeasibleError("template decoded an infeasible point: " + describe(violations.front()));
  }
  return composite_score(simulate_kpis(d, z_, seed, iterations), bau(seed, iterations), spec_, norms_);
}

double SimulationEvaluator::evaluate(const Point& p, uint64_t seed, int iterations) const {
  return report(p, seed, iterations).score;
}

ToyEvaluator::ToyEvaluator(SearchSpace space, uint64_t seed) : space_(std::move(space)) {
  Rng rng(seed);
  centre_ = space_.sample(rng);
}

double ToyEvaluator::evaluate(const Point& p, uint64_t, int) const {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = space_[i].range() > 0 ? space_[i].range() : 1.0;
    const double u = (p[i] - centre_[i]) / r;
    s += u * u;
  }
  return s;
}

Trial evaluate_trial(const TrialEvaluator& ev, int id, const Point& p, uint64_t seed, int iterations) {
  if (!ev.space().contains(p))
    throw InfeasibleError("trial " + std::to_string(id) + ": point outside the search space");
  const auto t0 = std::chrono::steady_clock::now();
  Trial t;
  t.id = id;
  t.point = p;
  t.d = ev.decode(p);
  t.seed = seed;
  t.iterations = iterations;
  t.score = ev.evaluate(p, seed, iterations);
  t.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

}  // namespace policysim
