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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "policysim/kpi/kpi.hpp"
#include "policysim/optimize/history.hpp"
#include "policysim/optimize/search_space.hpp"
#include "policysim/scenario/scenario.hpp"
#include "policysim/scoring/objective.hpp"
#include "policysim/scoring/score.hpp"
#include "policysim/udi/template.hpp"

namespace policysim {

/// Maps a search-space point to a scalar score (lower is better). Implementations must be
/// safe to call concurrently.
class TrialEvaluator {
 public:
  virtual ~TrialEvaluator() = default;
  virtual const SearchSpace& space() const = 0;
  virtual double evaluate(const Point& p, uint64_t seed, int iterations) const = 0;
  /// Decision vector recorded with the trial; empty for synthetic objectives.
  virtual DecisionVector decode(const Point&) const { return {}; }
};

/// decode -> validate -> run_simulation -> KPIs -> composite score. Each point is scored
/// against the BAU run with the same seed and iteration count; BAU runs are cached.
class SimulationEvaluator : public TrialEvaluator {
 public:
  SimulationEvaluator(const Scenario& z, ObjectiveSpec spec, NormStats norms, int incentive_slots = 3);

  /// Seeds the BAU cache, e.g. with KPIs read from a previous bau run.
  void set_bau(uint64_t seed, int iterations, const KpiVector& bau);
  KpiVector bau(uint64_t seed, int iterations) const;

  const SearchSpace& space() const override { return template_.space(); }
  const SearchSpaceTemplate& search_template() const { return template_; }
  double evaluate(const Point& p, uint64_t seed, int iterations) const override;
  DecisionVector decode(const Point& p) const override { return template_.decode(p); }
  /// Full score report for one point.
  ScoreReport report(const Point& p, uint64_t seed, int iterations) const;

 private:
  const Scenario& z_;
  SearchSpaceTemplate template_;
  ObjectiveSpec spec_;
  NormStats norms_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<uint64_t, int>, KpiVector> bau_;
};

/// Deterministic separable objective sum_i ((x_i - c_i) / range_i)^2 over a given space.
/// Centres are drawn uniformly from the space with `seed`; the simulation seed is ignored.
class ToyEvaluator : public TrialEvaluator {
 public:
  ToyEvaluator(SearchSpace space, uint64_t seed);

  const SearchSpace& space() const override { return space_; }
  const Point& centre() const { return centre_; }
  double evaluate(const Point& p, uint64_t seed, int iterations) const override;

 private:
  SearchSpace space_;
  Point centre_;
};

/// Evaluates one point and records it as a Trial. Throws InfeasibleError if the point is
/// outside the space bounds or decodes to an infeasible decision vector.
Trial evaluate_trial(const TrialEvaluator& ev, int id, const Point& p, uint64_t seed, int iterations);

}  // namespace policysim
