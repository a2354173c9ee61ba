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
#include <filesystem>
#include <vector>

#include "policysim/optimize/evaluator.hpp"
#include "policysim/optimize/history.hpp"

namespace policysim {

struct FinalScore {
  int trial_id = 0;
  Point point;
  double search_score = 0;
  std::vector<uint64_t> seeds;
  std::vector<double> rep_scores;
  double mean = 0;
  double min = 0;
  double max = 0;
  double spread = 0;  // max - min
};

struct FinalizeOptions {
  int top_k = 5;
  int reps = 5;
  int iterations = 100;
  uint64_t seed = 1;  // rep r uses mix_seed(seed, r)
  int workers = 1;
};

/// Trial indices ordered by (score, trial id).
std::vector<std::size_t> ranked_trials(const History& h);

/// Re-evaluates the top_k trials with `reps` distinct seeds and ranks them by mean score.
std::vector<FinalScore> finalize_top(const History& h, const TrialEvaluator& ev, const FinalizeOptions& opt);

/// Best p-fraction of trials (at least one): floor(p * n) trials in rank order.
struct TopPercentile {
  std::vector<int> trial_ids;
  std::vector<std::vector<double>> values;  // [dimension][member]
};
TopPercentile top_percentile_inputs(const History& h, double p);

/// final_scores.csv: rank,trial_id,search_score,mean,min,max,spread,rep_scores
void write_final_scores_csv(const std::vector<FinalScore>& f, const std::filesystem::path& path);

}  // namespace policysim
