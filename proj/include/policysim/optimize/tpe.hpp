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

#include <vector>

#include "policysim/optimize/batch.hpp"

namespace policysim {

struct TpeOptions {
  double gamma = 0.15;  // fraction of trials treated as good
  int n_candidates = 24;
  int n_init = 20;              // uniform suggestions until the history has this many trials
  int batch_size = 4;           // suggestions per round; independent of the worker count
  double min_bandwidth = 0.01;  // fraction of the coordinate range
};

/// Per-dimension Parzen estimator over a set of points. Continuous coordinates use
/// truncated Gaussian kernels plus one uniform prior component; categorical coordinates
/// use add-one smoothed frequencies. Every per-dimension density integrates to 1 over the
/// dimension's bounds.
class ParzenModel {
 public:
  ParzenModel(const SearchSpace& space, const std::vector<const Point*>& points, double min_bandwidth);

  double log_density(const Point& p) const;
  double density(std::size_t dim, double x) const;
  Point sample(Rng& rng) const;
  double bandwidth(std::size_t dim) const { return bandwidth_[dim]; }

 private:
  const SearchSpace* space_;
  std::vector<std::vector<double>> centres_;  // per dimension
  std::vector<double> bandwidth_;
  std::vector<std::vector<double>> mass_;       // per dimension, kernel mass inside bounds
  std::vector<std::vector<double>> frequency_;  // categorical dimensions
};

/// Suggests one point from the trial history. Uniform while the history is shorter than
/// n_init or when all scores are equal; otherwise the best of n_candidates draws from l
/// ranked by l(x) / g(x).
Point tpe_suggest(const History& h, const SearchSpace& space, const TpeOptions& tpe, Rng& rng);

/// SMBO loop: batches of tpe.batch_size suggestions evaluated together until opt.budget.
History tpe_search(const TrialEvaluator& ev, const SearchOptions& opt, const TpeOptions& tpe = {});

}  // namespace policysim
