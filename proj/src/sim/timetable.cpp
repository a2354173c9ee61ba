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

#include "policysim/sim/timetable.hpp"

#include <algorithm>
#include <limits>

#include "policysim/common/error.hpp"
#include "policysim/sim/skims.hpp"

namespace policysim {

std::optional<std::size_t> Timetable::first_trip_at_or_after(std::size_t stop, double t) const {
  auto it = std::lower_bound(departures.begin(), departures.end(), t - arrival_offset[stop]);
  // Guard against rounding in the subtraction.
  while (it != departures.begin() && *(it - 1) + arrival_offset[stop] >= t) --it;
  while (it != departures.end() && *it + arrival_offset[stop] < t) ++it;
  if (it == departures.end()) return std::nullopt;
  return static_cast<std::size_t>(it - departures.begin());
}

double Timetable::mean_headway() const {
  if (departures.size() < 2) return std::numeric_limits<double>::infinity();
  return (departures.back() - departures.front()) / static_cast<double>(departures.size() - 1);
}

Timetable build_timetable(const Scenario& z, int route, const DecisionVector& d) {
  const auto& r = z.routes.at(route);
  Timetable tt;
  tt.route = route;
  tt.route_id = r.id;
  tt.vehicle_type = r.default_vehicle_type;
  for (const auto& f : d.fleet) {
    if (f.route_id != r.id) continue;
    const auto vt = z.vehicle_type_index(f.vehicle_type_id);
    if (!vt) throw InfeasibleError("unknown vehicle type " + f.vehicle_type_id);
    tt.vehicle_type = *vt;
  }

  struct Window {
    double start, end, headway;
  };
  std::vector<Window> windows;
  for (const auto& f : d.frequency) {
    if (f.route_id == r.id) windows.push_back({double(f.start_time), double(f.end_time), double(f.headway_secs)});
  }
  auto in_window = [&](double t) {
    return std::any_of(windows.begin(), windows.end(), [t](const Window& w) { return t >= w.start && t <= w.end; });
  };
  for (const auto& w : windows) {
    for (double t = w.start; t <= w.end; t += w.headway) tt.departures.push_back(t);
  }
  for (const auto& p : r.periods) {
    for (double t = p.start_s; t <= p.end_s; t += p.headway_s) {
      if (!in_window(t)) tt.departures.push_back(t);
    }
  }
  std::sort(tt.departures.begin(), tt.departures.end());
  tt.departures.erase(std::unique(tt.departures.begin(), tt.departures.end()), tt.departures.end());

  const auto& net = z.network;
  const auto ff = free_flow_costs(net);
  double offset = 0;
  for (std::size_t j = 0; j < r.stops.size(); ++j) {
    tt.arrival_offset.push_back(offset);
    tt.dwell.push_back(r.stops[j].dwell_s);
    if (j + 1 == r.stops.size()) break;
    const int from = r.stops[j].node;
    const int to = r.stops[j + 1].node;
    std::vector<int> links;
    double travel = 0, length = 0;
    if (from != to) {
      const auto tree = dijkstra(net, from, kCarBit, ff);
      links = extract_path(net, tree, to);
      if (links.empty()) throw RuntimeError("route " + std::to_string(r.id) + ": no bus path between stops");
      for (int li : links) {
        travel += net.link(li).free_flow_s();
        length += net.link(li).length_m;
      }
    }
    tt.segment_links.push_back(std::move(links));
    tt.segment_length_m.push_back(length);
    offset += r.stops[j].dwell_s + travel;
  }
  return tt;
}

std::vector<Timetable> build_timetables(const Scenario& z, const DecisionVector& d) {
  std::vector<Timetable> out;
  out.reserve(z.routes.size());
  for (std::size_t r = 0; r < z.routes.size(); ++r) out.push_back(build_timetable(z, static_cast<int>(r), d));
  return out;
}

}  // namespace policysim
