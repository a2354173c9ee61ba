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

#include <optional>
#include <span>
#include <vector>

#include "policysim/common/rng.hpp"
#include "policysim/scenario/scenario.hpp"
#include "policysim/udi/decision.hpp"

namespace policysim {

/// Softmax with max-shift.
std::vector<double> logit_probabilities(std::span<const double> utilities);

/// Draws an index with probability exp(u_k) / sum_j exp(u_j). Throws std::invalid_argument on
/// an empty or non-finite utility set.
std::size_t mode_choice(std::span<const double> utilities, Rng& rng);

/// Expected (or realized) attributes of one leg alternative.
struct LegOption {
  TripMode mode = TripMode::kWalk;
  double duration_s = 0;    // door to door, including waits
  double in_vehicle_s = 0;  // transit only; weighted by crowding_factor
  double crowding_factor = 1.0;
  double gross_cost_usd = 0;  // fare, ride-hail price or car operating cost
};

/// The incentive table row family that pays for a trip mode, if any.
std::optional<IncentiveMode> incentive_mode_for(TripMode m);

/// max(0, gross - incentive) when the floor is on, else gross - incentive.
double net_cost(double gross_usd, double incentive_usd, bool floor);

/// Incentive for this agent and mode under d (0 if the mode is never incentivised).
double incentive_for_trip(TripMode m, int age, double income, const DecisionVector& d);

/// VOT multiplier for a transit load factor (occupancy / seats) per the configured bands.
double crowding_multiplier(double load_factor, const GlobalConfig& c);

/// u = -(beta_time * hours + beta_cost * net USD + ASC_mode).
double leg_utility(const LegOption& o, int age, double income, const DecisionVector& d, const GlobalConfig& c);

}  // namespace policysim
