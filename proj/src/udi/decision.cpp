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

#include "policysim/udi/decision.hpp"

#include <algorithm>
#include <tuple>

namespace policysim {

const char* incentive_mode_name(IncentiveMode m) {
  switch (m) {
    case IncentiveMode::kRideHail:
      return "ride_hail";
    case IncentiveMode::kWalkTransit:
      return "walk_transit";
    case IncentiveMode::kDriveTransit:
      return "drive_transit";
  }
  return "?";
}

std::optional<IncentiveMode> parse_incentive_mode(const std::string& s) {
  if (s == "ride_hail") return IncentiveMode::kRideHail;
  if (s == "walk_transit") return IncentiveMode::kWalkTransit;
  if (s == "drive_transit") return IncentiveMode::kDriveTransit;
  return std::nullopt;
}

std::optional<double> DecisionVector::fare_for(int64_t route_id, int age) const {
  for (const auto& f : fares) {
    if (f.route_id == route_id && age >= f.age_min && age <= f.age_max) return f.fare;
  }
  return std::nullopt;
}

double DecisionVector::incentive_for(IncentiveMode mode, int age, double income) const {
  double best = 0;
  for (const auto& i : incentives) {
    if (i.mode == mode && age >= i.age_min && age <= i.age_max && income >= i.income_min && income <= i.income_max) {
      best = std::max(best, i.amount);
    }
  }
  return best;
}

DecisionVector canonicalize(DecisionVector d) {
  std::stable_sort(d.frequency.begin(), d.frequency.end(), [](const auto& a, const auto& b) {
    return std::tie(a.route_id, a.start_time, a.end_time) < std::tie(b.route_id, b.start_time, b.end_time);
  });
  std::stable_sort(d.fleet.begin(), d.fleet.end(),
                   [](const auto& a, const auto& b) { return a.route_id < b.route_id; });
  std::stable_sort(d.fares.begin(), d.fares.end(), [](const auto& a, const auto& b) {
    return std::tie(a.route_id, a.age_min, a.age_max) < std::tie(b.route_id, b.age_min, b.age_max);
  });
  return d;
}

}  // namespace policysim
