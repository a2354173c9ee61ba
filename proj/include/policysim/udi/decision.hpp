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
#include <optional>
#include <string>
#include <vector>

namespace policysim {

enum class IncentiveMode : uint8_t { kRideHail, kWalkTransit, kDriveTransit };
const char* incentive_mode_name(IncentiveMode m);
std::optional<IncentiveMode> parse_incentive_mode(const std::string& s);

/// One FrequencyAdjustment.csv row. Times are integer seconds after midnight.
struct FrequencyAdjustment {
  int64_t route_id = 0;
  int start_time = 0;
  int end_time = 0;
  int headway_secs = 0;
  int exact_times = 1;

  bool operator==(const FrequencyAdjustment&) const = default;
};

struct FleetAssignment {
  int64_t route_id = 0;
  std::string vehicle_type_id;

  bool operator==(const FleetAssignment&) const = default;
};

/// Age bounds are inclusive on both ends.
struct FareRule {
  int64_t route_id = 0;
  int age_min = 0;
  int age_max = 0;
  double fare = 0;

  bool operator==(const FareRule&) const = default;
};

struct ModeIncentive {
  IncentiveMode mode = IncentiveMode::kRideHail;
  int age_min = 0;
  int age_max = 0;
  double income_min = 0;
  double income_max = 0;
  double amount = 0;

  bool operator==(const ModeIncentive&) const = default;
};

/// The four user-defined input tables. Empty tables mean business as usual.
struct DecisionVector {
  std::vector<FrequencyAdjustment> frequency;
  std::vector<FleetAssignment> fleet;
  std::vector<FareRule> fares;
  std::vector<ModeIncentive> incentives;

  bool empty() const { return frequency.empty() && fleet.empty() && fares.empty() && incentives.empty(); }
  bool operator==(const DecisionVector&) const = default;

  /// Fare for a rider of `age` on `route_id`; first matching row wins.
  std::optional<double> fare_for(int64_t route_id, int age) const;
  /// Largest matching incentive amount (0 when none). Rows do not stack.
  double incentive_for(IncentiveMode mode, int age, double income) const;
};

/// Sorts rows into a canonical order (route, then start/age). Incentive order is kept.
DecisionVector canonicalize(DecisionVector d);

}  // namespace policysim
