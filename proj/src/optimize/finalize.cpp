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

#include "policysim/optimize/finalize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "policysim/common/csv.hpp"
#include "policysim/common/rng.hpp"
#include "policysim/optimize/batch.hpp"

namespace policysim {

std::vector<std::size_t> ranked_trials(const History& h) {
  std::vector<std::size_t> order(h.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (h[a].score != h[b].score) return h[a].score < h[b].score;
    return h[a].id < h[b].id;
  });
  return order;
}

std::vector<FinalScore> finalize_top(const History& h, const TrialEvaluator& ev, const FinalizeOptions& opt) {
  if (opt.top_k < 1 || opt.top_k > static_cast<int>(h.size())) {
    throw std::invalid_argument("finalize_top: k must be in [1, history size]");
  }
  if (opt.reps < 1) throw std::invalid_argument("finalize_top: reps must be >= 1");
  const auto order = ranked_trials(h);
  std::vector<FinalScore> out;
  for (int k = 0; k < opt.top_k; ++k) {
    const Trial& t = h[order[k]];
    FinalScore f;
    f.trial_id = t.id;
    f.point = t.point;
    f.search_score = t.score;
    for (int r = 0; r < opt.reps; ++r) f.seeds.push_back(mix_seed(opt.seed, static_cast<uint64_t>(r)));
    f.rep_scores.assign(opt.reps, 0.0);
    out.push_back(std::move(f));
  }

  // One flat batch of (candidate, rep) evaluations.
  const int n = opt.top_k * opt.reps;
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(opt.workers > 0 ? opt.workers : 1)
  for (int i = 0; i < n; ++i) {
    FinalScore& f = out[i / opt.reps];
    try {
      f.rep_scores[i % opt.reps] = ev.evaluate(f.point, f.seeds[i % opt.reps], opt.iterations);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (auto& f : out) {
    f.mean = std::accumulate(f.rep_scores.begin(), f.rep_scores.end(), 0.0) / f.rep_scores.size();
    f.min = *std::min_element(f.rep_scores.begin(), f.rep_scores.end());
    f.max = *std::max_element(f.rep_scores.begin(), f.rep_scores.end());
    f.mean = std::clamp(f.mean, f.min, f.max);  // summation rounding
    f.spread = f.max - f.min;
  }
  std::stable_sort(out.begin(), out.end(), [](const FinalScore& a, const FinalScore& b) { return a.mean < b.mean; });
  return out;
}

TopPercentile top_percentile_inputs(const History& h, double p) {
  if (!(p > 0 && p <= 1)) throw std::invalid_argument("top percentile p must be in (0, 1]");
  TopPercentile out;
  if (h.empty()) return out;
  const auto order = ranked_trials(h);
  const std::size_t count =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(p * h.size() + 1e-9)), 1, h.size());
  out.values.resize(h[0].point.size());
  for (std::size_t r = 0; r < count; ++r) {
    const Trial& t = h[order[r]];
    out.trial_ids.push_back(t.id);
    for (std::size_t d = 0; d < out.values.size(); ++d) out.values[d].push_back(t.point.at(d));
  }
  return out;
}

void write_final_scores_csv(const std::vector<FinalScore>& f, const std::filesystem::path& path) {
  CsvWriter w(path);
  w.row({"rank", "trial_id", "search_score", "mean", "min", "max", "spread", "rep_scores"});
  for (std::size_t r = 0; r < f.size(); ++r) {
    std::string reps;
    for (std::size_t i = 0; i < f[r].rep_scores.size(); ++i) {
      if (i) reps += ';';
      reps += format_double(f[r].rep_scores[i]);
    }
    w.row({std::to_string(r + 1), std::to_string(f[r].trial_id), format_double(f[r].search_score),
           format_double(f[r].mean), format_double(f[r].min), format_double(f[r].max), format_double(f[r].spread),
           reps});
  }
}

}  // namespace policysim
