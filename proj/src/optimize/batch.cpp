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

#include "policysim/optimize/batch.hpp"

#include <exception>

namespace policysim {

std::vector<Trial> evaluate_batch_serial(const TrialEvaluator& ev, const std::vector<Point>& points, int first_id,
                                         uint64_t seed, int iterations) {
  std::vector<Trial> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.push_back(evaluate_trial(ev, first_id + static_cast<int>(i), points[i], seed, iterations));
  }
  return out;
}

std::vector<Trial> evaluate_batch_parallel(const TrialEvaluator& ev, const std::vector<Point>& points, int first_id,
                                           uint64_t seed, int iterations, int workers) {
  std::vector<Trial> out(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  const int n = static_cast<int>(points.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers > 0 ? workers : 1)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = evaluate_trial(ev, first_id + i, points[i], seed, iterations);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<Trial> evaluate_batch(const TrialEvaluator& ev, const std::vector<Point>& points, int first_id,
                                  uint64_t seed, int iterations, int workers) {
  if (workers <= 1) return evaluate_batch_serial(ev, points, first_id, seed, iterations);
  return evaluate_batch_parallel(ev, points, first_id, seed, iterations, workers);
}

void evaluate_into(History& h, const TrialEvaluator& ev, const std::vector<Point>& points, const SearchOptions& opt) {
  for (auto& t : evaluate_batch(ev, points, h.next_id(), opt.sim_seed, opt.iterations, opt.workers)) {
    h.append(std::move(t));
  }
}

}  // namespace policysim
