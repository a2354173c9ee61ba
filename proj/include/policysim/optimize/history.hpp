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
#include <string>
#include <vector>

#include "policysim/optimize/search_space.hpp"
#include "policysim/udi/decision.hpp"

namespace policysim {

struct Trial {
  int id = 0;
  Point point;
  DecisionVector d;
  uint64_t seed = 0;
  int iterations = 0;
  double score = 0;
  double wall_s = 0;
  int generation = -1;  // GA generation; -1 for other algorithms
};

/// Append-only list of evaluated trials.
class History {
 public:
  void append(Trial t);

  std::size_t size() const { return trials_.size(); }
  bool empty() const { return trials_.empty(); }
  const Trial& operator[](std::size_t i) const { return trials_[i]; }
  const std::vector<Trial>& trials() const { return trials_; }

  /// Index of the lowest score; the earliest trial wins ties. Throws on an empty history.
  std::size_t best_index() const;
  const Trial& best() const { return trials_[best_index()]; }
  /// Running minimum of scores in trial order.
  std::vector<double> best_so_far() const;
  int next_id() const { return static_cast<int>(trials_.size()); }

 private:
  std::vector<Trial> trials_;
  std::size_t best_ = 0;
};

/// history.csv: trial_id,score,iterations,seed,<dimension names...>
void write_history_csv(const History& h, const SearchSpace& space, const std::filesystem::path& path);
/// Reads trial id, score, iterations, seed and point; decision vectors are left empty.
History read_history_csv(const std::filesystem::path& path, std::vector<std::string>* dimension_names = nullptr);

}  // namespace policysim
