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
#include <vector>

#include "policysim/scenario/scenario.hpp"
#include "policysim/sim/skims.hpp"
#include "policysim/sim/timetable.hpp"

namespace policysim {

/// A single-route walk-ride-walk alternative: board at stop index `board`, alight at `alight`.
struct TransitCandidate {
  int timetable = 0;  // index into the timetable vector
  int board = 0;
  int alight = 0;
  double access_m = 0;
  double egress_m = 0;
};

struct TransitItinerary {
  TransitCandidate candidate;
  std::size_t trip = 0;
  double at_stop = 0;  // when the agent reaches the boarding stop
  double board_time = 0;
  double alight_time = 0;
  double arrival = 0;
  double in_vehicle_s() const { return alight_time - board_time; }
};

/// Earliest-arrival router over the timetables, no transfers. Candidate lists per
/// origin/destination pair are built lazily; a router belongs to one simulation run.
class TransitRouter {
 public:
  TransitRouter(const Scenario& z, const std::vector<Timetable>& timetables, const Skims& walk_m);

  const std::vector<TransitCandidate>& candidates(int o, int d);
  /// Best itinerary departing the origin at t, or nullopt if no trip is reachable within
  /// the walk and wait limits. Ties keep the earlier candidate.
  std::optional<TransitItinerary> earliest_arrival(int o, int d, double t);

 private:
  const Scenario& z_;
  const std::vector<Timetable>& timetables_;
  const Skims& walk_m_;
  std::vector<std::vector<TransitCandidate>> cache_;
  std::vector<char> built_;
};

enum class BoardOutcome { kBoarded, kDenied };

/// Boards iff occupancy < seats + standing; increments occupancy on success.
BoardOutcome transit_board(int& occupancy, const VehicleType& type);

}  // namespace policysim
