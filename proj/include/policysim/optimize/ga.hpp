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

#include "policysim/optimize/batch.hpp"

namespace policysim {

struct GaOptions {
  int population = 10;            // P
  int trajectories = 5;           // T
  int pool_factor = 4;            // gene pool size = pool_factor * P
  int tournament = 2;             // k
  double mutation_rate = 0.1;     // per continuous coordinate
  double mutation_sigma = 0.1;    // fraction of the coordinate range
  double categorical_rate = 0.1;  // per categorical coordinate
};

/// Genetic search with T trajectories advanced round-robin. Each trajectory starts from P
/// members of a shared random gene pool (pool members are evaluated at most once), then
/// breeds P offspring per generation by tournament selection, block-uniform crossover and
/// clipped Gaussian / categorical mutation. The trajectory's best individual replaces the
/// worst offspring when it is better. Stops after opt.budget evaluations.
History ga_search(const TrialEvaluator& ev, const SearchOptions& opt, const GaOptions& ga = {});

/// Mutation step used by ga_search; exposed for tests.
Point ga_mutate(const SearchSpace& space, Point p, const GaOptions& ga, Rng& rng);
/// Block-uniform crossover: each block is copied whole from a or b.
Point ga_crossover(const SearchSpace& space, const Point& a, const Point& b, Rng& rng);

}  // namespace policysim
