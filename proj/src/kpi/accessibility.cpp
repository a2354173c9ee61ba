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

#include "policysim/kpi/accessibility.hpp"

#include <algorithm>
#include <limits>

#include "policysim/sim/timetable.hpp"
#include "policysim/sim/transit.hpp"

namespace policysim {

double AccessibilityMatrices::time(AccessMode m, int o, int d) const {
  const auto k = static_cast<std::size_t>(o) * n + d;
  switch (m) {
    case AccessMode::kCar:
      return car[k];
    case AccessMode::kTransit:
      return transit[k];
    case AccessMode::kAll:
      return std::min({car[k], walk[k], transit[k]});
  }
  return std::numeric_limits<double>::infinity();
}

AccessibilityMatrices build_accessibility_matrices(const Scenario& z, const DecisionVector& d,
                                                   std::span<const double> car_link_times) {
  const auto& net = z.network;
  AccessibilityMatrices m;
  m.n = static_cast<int>(net.num_nodes());
  const auto nn = static_cast<std::size_t>(m.n) * m.n;
  m.car = all_pairs_parallel(net, kCarBit, car_link_times).cost;
  const auto walk_m = all_pairs_parallel(net, kWalkBit, length_costs(net));
  m.walk.resize(nn);
  for (std::size_t k = 0; k < nn; ++k) m.walk[k] = walk_m.cost[k] / z.config.walk_speed_mps;

  const auto timetables = build_timetables(z, d);
  TransitRouter router(z, timetables, walk_m);
  m.transit.assign(nn, std::numeric_limits<double>::infinity());
  const double speed = z.config.walk_speed_mps;
  for (int o = 0; o < m.n; ++o) {
    for (int dd = 0; dd < m.n; ++dd) {
      auto& cell = m.transit[static_cast<std::size_t>(o) * m.n + dd];
      if (o == dd) {
        cell = 0;
        continue;
      }
      for (const auto& c : router.candidates(o, dd)) {
        const auto& tt = timetables[c.timetable];
        if (tt.num_trips() == 0) continue;
        const double half_headway = tt.num_trips() > 1 ? tt.mean_headway() / 2.0 : 0.0;
        const double t = c.access_m / speed + half_headway + tt.arrival_offset[c.alight] - tt.arrival_offset[c.board] +
                         c.egress_m / speed;
        cell = std::min(cell, t);
      }
    }
  }
  return m;
}

std::vector<int> opportunity_nodes(const Scenario& z, ActivityType type) {
  std::vector<char> seen(z.network.num_nodes(), 0);
  for (const auto& p : z.plans) {
    for (const auto& a : p.activities) {
      if (a.type == type) seen[a.node] = 1;
    }
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

double accessibility(const Scenario& z, const AccessibilityMatrices& m, ActivityType type, AccessMode mode,
                     double threshold_s) {
  if (z.plans.empty()) return 0.0;
  const auto opportunities = opportunity_nodes(z, type);
  std::vector<int> per_home(m.n, -1);
  double total = 0;
  for (std::size_t a = 0; a < z.plans.size(); ++a) {
    const int home = z.agent_household(static_cast<int>(a)).home_node;
    if (per_home[home] < 0) {
      int count = 0;
      for (int node : opportunities) {
        if (m.time(mode, home, node) <= threshold_s) ++count;
      }
      per_home[home] = count;
    }
    total += per_home[home];
  }
  return total / static_cast<double>(z.plans.size());
}

}  // namespace policysim
