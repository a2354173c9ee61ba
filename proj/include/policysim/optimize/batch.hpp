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
#include <vector>

#include "policysim/optimize/evaluator.hpp"
#include "policysim/optimize/history.hpp"

namespace policysim {

/// Settings shared by every search algorithm.
struct SearchOptions {
  int budget = 300;
  uint64_t seed = 1;      // algorithm randomness
  uint64_t sim_seed = 1;  // simulation seed shared by all trials
  int iterations = 40;
  int workers = 1;
};

/// Evaluates points in order; trial ids are first_id, first_id + 1, ...
std::vector<Trial> evaluate_batch_serial(const TrialEvaluator& ev, const std::vector<Point>& points, int first_id,
                                         uint64_t seed, int iterations);
/// OpenMP version of evaluate_batch_serial with identical results. The first exception
/// thrown by any trial (in trial order) is rethrown after the batch completes.
std::vector<Trial> evaluate_batch_parallel(const TrialEvaluator& ev, const std::vector<Point>& points, int first_id,
                                           uint64_t seed, int iterations, int workers);
/// Serial for workers <= 1, parallel otherwise.
std::vector<Trial> evaluate_batch(const TrialEvaluator& ev, const std::vector<Point>& points, int first_id,
                                  uint64_t seed, int iterations, int workers);

/// Evaluates `points` and appends the trials to `h`.
void evaluate_into(History& h, const TrialEvaluator& ev, const std::vector<Point>& points, const SearchOptions& opt);

}  // namespace policysim
