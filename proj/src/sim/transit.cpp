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

#include "policysim/sim/transit.hpp"

namespace policysim {

TransitRouter::TransitRouter(const Scenario& z, const std::vector<Timetable>& timetables, const Skims& walk_m)
    : z_(z), timetables_(timetables), walk_m_(walk_m) {
  const auto n = static_cast<std::size_t>(walk_m.n);
  cache_.resize(n * n);
  built_.assign(n * n, 0);
}

const std::vector<TransitCandidate>& TransitRouter::candidates(int o, int d) {
  const auto key = static_cast<std::size_t>(o) * walk_m_.n + d;
  if (built_[key]) return cache_[key];
  built_[key] = 1;
  auto& out = cache_[key];
  if (o == d) return out;
  const double max_walk = z_.config.transit_max_walk_m;
  for (std::size_t t = 0; t < timetables_.size(); ++t) {
    const auto& stops = z_.routes[timetables_[t].route].stops;
    for (std::size_t j = 0; j + 1 < stops.size(); ++j) {
      const double access = walk_m_.at(o, stops[j].node);
      if (!(access <= max_walk)) continue;
      for (std::size_t k = j + 1; k < stops.size(); ++k) {
        if (stops[k].node == stops[j].node) continue;
        const double egress = walk_m_.at(stops[k].node, d);
        if (!(egress <= max_walk)) continue;
        out.push_back({static_cast<int>(t), static_cast<int>(j), static_cast<int>(k), access, egress});
      }
    }
  }
  return out;
}

std::optional<TransitItinerary> TransitRouter::earliest_arrival(int o, int d, double t) {
  const double speed = z_.config.walk_speed_mps;
  const double max_wait = z_.config.transit_max_wait_s;
  std::optional<TransitItinerary> best;
  for (const auto& c : candidates(o, d)) {
    const auto& tt = timetables_[c.timetable];
    const double at_stop = t + c.access_m / speed;
    const auto trip = tt.first_trip_at_or_after(c.board, at_stop);
    if (!trip) continue;
    const double board = tt.arrival(*trip, c.board);
    if (board - at_stop > max_wait) continue;
    const double alight = tt.arrival(*trip, c.alight);
    const double arrival = alight + c.egress_m / speed;
    if (!best || arrival < best->arrival) best = TransitItinerary{c, *trip, at_stop, board, alight, arrival};
  }
  return best;
}

BoardOutcome transit_board(int& occupancy, const VehicleType& type) {
  if (occupancy < type.capacity()) {
    ++occupancy;
    return BoardOutcome::kBoarded;
  }
  return BoardOutcome::kDenied;
}

}  // namespace policysim
