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

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "policysim/common/rng.hpp"
#include "policysim/scenario/scenario.hpp"
#include "policysim/sim/events.hpp"
#include "policysim/udi/decision.hpp"

namespace policysim {

struct PlanVariant {
  std::vector<TripMode> modes;  // one per leg
  double score = 0;
  bool scored = false;
};

/// Per-agent memory of up to `capacity` mode assignments with their last realized scores.
class PlanMemory {
 public:
  explicit PlanMemory(int capacity = 4) : capacity_(capacity) {}

  std::size_t size() const { return plans_.size(); }
  bool empty() const { return plans_.empty(); }
  const PlanVariant& operator[](std::size_t i) const { return plans_[i]; }

  /// Returns the index of `modes`, adding it if new. When the memory overflows, the
  /// worst-scored other variant is evicted.
  std::size_t insert(const std::vector<TripMode>& modes);
  void set_score(std::size_t i, double score);
  /// Logit draw over scored variants with scores divided by `temperature`.
  std::size_t select(Rng& rng, double temperature) const;

 private:
  int capacity_;
  std::vector<PlanVariant> plans_;
};

struct IterationSummary {
  int iteration = 0;
  double mean_score = 0;
  std::array<int, kNumTripModes> mode_legs{};  // planned modes of legs started
  int denied_boardings = 0;
  int fallbacks = 0;
  double mean_ridehail_wait_s = 0;
};

struct SimOutputs {
  EventLog events;  // final iteration only
  std::vector<IterationSummary> iterations;
  bool converged = false;
  int iterations_run = 0;
};

/// Runs the co-evolutionary loop for max_iterations (or until convergence when the scenario
/// config enables early stopping). Throws InfeasibleError if d violates a business rule.
SimOutputs run_simulation(const DecisionVector& d, const Scenario& z, uint64_t seed, int max_iterations);

void write_iterations_csv(const std::vector<IterationSummary>& it, const std::filesystem::path& path);

}  // namespace policysim
