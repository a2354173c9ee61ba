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
#include "policysim/udi/decision.hpp"

namespace policysim {

/// Scheduled service of one route. A trip's "departure" is its arrival at the first stop;
/// every trip shares the same stop offsets (buses run at free-flow plus dwell).
struct Timetable {
  int route = 0;  // index into Scenario::routes
  int64_t route_id = 0;
  int vehicle_type = 0;  // index into Scenario::vehicle_types
  std::vector<double> departures;
  std::vector<double> arrival_offset;           // per stop
  std::vector<double> dwell;                    // per stop
  std::vector<std::vector<int>> segment_links;  // stop j -> j+1
  std::vector<double> segment_length_m;

  std::size_t num_stops() const { return arrival_offset.size(); }
  std::size_t num_trips() const { return departures.size(); }
  double arrival(std::size_t trip, std::size_t stop) const { return departures[trip] + arrival_offset[stop]; }
  /// First trip whose arrival at `stop` is >= t.
  std::optional<std::size_t> first_trip_at_or_after(std::size_t stop, double t) const;
  /// Mean gap between consecutive departures over the day; +inf with fewer than two trips.
  double mean_headway() const;
};

/// Departures every headway_secs from start_time up to and including end_time inside each
/// adjusted window; default periods supply departures outside those windows. The vehicle
/// type is the fleet-mix override if present, else the route default.
Timetable build_timetable(const Scenario& z, int route, const DecisionVector& d);
std::vector<Timetable> build_timetables(const Scenario& z, const DecisionVector& d);

}  // namespace policysim
