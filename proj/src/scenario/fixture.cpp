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

#include "policysim/scenario/fixture.hpp"

#include <cmath>
#include <stdexcept>

#include "policysim/common/rng.hpp"

namespace policysim {

namespace {

constexpr double kBlock = 800.0;
// Capacities are sized for the synthetic population, which stands in for a larger city.
constexpr double kCorridorCapacity = 120.0;
constexpr double kLocalCapacity = 60.0;
constexpr double kPeakHeadway = 2400.0;

struct Bin {
  double lo, hi, weight;
};

double draw_piecewise(Rng& rng, std::initializer_list<Bin> bins) {
  double total = 0;
  for (const auto& b : bins) total += b.weight;
  double u = uniform01(rng) * total;
  for (const auto& b : bins) {
    if (u < b.weight) return b.lo + (b.hi - b.lo) * (u / b.weight);
    u -= b.weight;
  }
  return bins.begin()[bins.size() - 1].hi;
}

int draw_age(Rng& rng, bool adult) {
  double a = adult
                 ? draw_piecewise(rng, {{18, 35, 0.26}, {35, 65, 0.38}, {65, 91, 0.14}})
                 : draw_piecewise(rng, {{0, 16, 0.19}, {16, 18, 0.03}, {18, 35, 0.26}, {35, 65, 0.38}, {65, 91, 0.14}});
  return std::min(90, static_cast<int>(std::floor(a)));
}

int draw_weighted(Rng& rng, const std::vector<double>& w, int exclude) {
  double total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (static_cast<int>(i) != exclude) total += w[i];
  }
  double u = uniform01(rng) * total;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (static_cast<int>(i) == exclude) continue;
    if (u < w[i]) return static_cast<int>(i);
    u -= w[i];
  }
  for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
    if (i != exclude) return i;
  }
  return 0;
}

double draw_time(Rng& rng, double lo, double hi) { return std::floor(lo + (hi - lo) * uniform01(rng)); }

}  // namespace

Scenario generate_sioux_micro(uint64_t seed, int n_agents, int grid_dim) {
  if (n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
  if (grid_dim < 2) throw std::invalid_argument("grid_dim must be >= 2");
  Rng rng(seed);
  Scenario s;
  // Mode constants stand in for car ownership and parking, which the fixture does not model.
  s.config.asc_car = 4.0;
  s.config.asc_walk = 3.0;
  s.config.asc_ride_hail = 3.0;
  s.config.asc_walk_transit = 0.0;
  s.config.accessibility_threshold_s = 600.0;
  const int g = grid_dim;
  const int bus_row = g / 2;
  const int bus_col = (g - 1) / 2;
  auto node_at = [g](int r, int c) { return r * g + c; };

  for (int r = 0; r < g; ++r) {
    for (int c = 0; c < g; ++c) s.network.add_node(Node{node_at(r, c) + 1, c * kBlock, r * kBlock});
  }
  int64_t next_link = 1;
  auto add_pair = [&](int a, int b, bool corridor) {
    for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
      Link l;
      l.id = next_link++;
      l.from = u;
      l.to = v;
      l.length_m = kBlock;
      l.speed_mps = corridor ? 11.2 : 8.0;
      l.capacity_vph = corridor ? kCorridorCapacity : kLocalCapacity;
      l.modes = kCarBit | kWalkBit | kBusBit;
      s.network.add_link(l);
    }
  };
  for (int r = 0; r < g; ++r) {
    for (int c = 0; c + 1 < g; ++c) add_pair(node_at(r, c), node_at(r, c + 1), r == bus_row);
  }
  for (int c = 0; c < g; ++c) {
    for (int r = 0; r + 1 < g; ++r) add_pair(node_at(r, c), node_at(r + 1, c), c == bus_col);
  }

  s.vehicle_types = {
      {"BUS-DEFAULT", "diesel", 20048, 89.88, 37, 20},
      {"BUS-SMALL-HD", "diesel", 18043.2, 90.18, 27, 10},
      {"BUS-STD-HD", "diesel", 20048, 90.18, 35, 20},
      {"BUS-STD-ART", "diesel", 26663.84, 97.26, 54, 25},
  };

  const std::vector<ServicePeriod> periods{{18000, 25200, 1800},
                                           {25200, 34200, kPeakHeadway},
                                           {34200, 57600, 1800},
                                           {57600, 66600, kPeakHeadway},
                                           {66600, 82800, 2400}};
  auto make_route = [&](int64_t id, std::vector<int> line, long source_line) {
    TransitRoute route;
    route.id = id;
    route.agency = "SIOUX-MICRO-TRANSIT";
    route.default_vehicle_type = 1;  // BUS-SMALL-HD
    route.periods = periods;
    route.source_line = source_line;
    for (int n : line) route.stops.push_back({n, 20.0});
    for (int k = static_cast<int>(line.size()) - 2; k >= 0; --k) route.stops.push_back({line[k], 20.0});
    s.routes.push_back(std::move(route));
  };
  {
    std::vector<int> row, col;
    for (int c = 0; c < g; ++c) row.push_back(node_at(bus_row, c));
    for (int r = 0; r < g; ++r) col.push_back(node_at(r, bus_col));
    make_route(kFixtureRouteRow, row, 2);
    make_route(kFixtureRouteColumn, col, 3);
  }

  const int n_nodes = g * g;
  std::vector<double> work_weight(n_nodes), uniform_weight(n_nodes, 1.0);
  const double centre = (g - 1) / 2.0;
  for (int r = 0; r < g; ++r) {
    for (int c = 0; c < g; ++c) {
      work_weight[node_at(r, c)] = std::pow(1.0 + std::abs(r - centre) + std::abs(c - centre), -3.0);
    }
  }

  int64_t next_person = 1;
  int64_t next_household = 1;
  while (static_cast<int>(s.persons.size()) < n_agents) {
    const double size_draw = uniform01(rng);
    int size = size_draw < 0.30 ? 1 : size_draw < 0.65 ? 2 : size_draw < 0.80 ? 3 : 4;
    size = std::min(size, n_agents - static_cast<int>(s.persons.size()));
    Household hh;
    hh.id = next_household++;
    hh.income_usd = std::floor(draw_piecewise(
        rng, {{10000, 25000, 0.18}, {25000, 50000, 0.27}, {50000, 100000, 0.33}, {100000, 200000, 0.22}}));
    hh.home_node = static_cast<int>(std::uniform_int_distribution<int>(0, n_nodes - 1)(rng));
    const int hh_index = static_cast<int>(s.households.size());
    s.households.push_back(hh);
    for (int m = 0; m < size; ++m) {
      Person p;
      p.id = next_person++;
      p.age = draw_age(rng, m == 0);
      p.household = hh_index;
      const int person_index = static_cast<int>(s.persons.size());
      s.persons.push_back(p);

      const bool worker =
          (p.age >= 18 && p.age <= 64 && uniform01(rng) < 0.75) || (p.age >= 65 && uniform01(rng) < 0.15);
      Plan plan;
      plan.person = person_index;
      if (worker) {
        const double home_end = draw_time(rng, 26100, 29700);
        const int work = draw_weighted(rng, work_weight, hh.home_node);
        const double work_end = home_end + draw_time(rng, 28800, 32400);
        const int secondary = draw_weighted(rng, uniform_weight, work);
        const double secondary_end = work_end + draw_time(rng, 1800, 5400);
        plan.activities = {{ActivityType::kHome, hh.home_node, home_end},
                           {ActivityType::kWork, work, work_end},
                           {ActivityType::kSecondary, secondary, secondary_end},
                           {ActivityType::kHome, hh.home_node, -1}};
      } else {
        const double home_end = draw_time(rng, 32400, 54000);
        const int secondary = draw_weighted(rng, uniform_weight, hh.home_node);
        const double secondary_end = home_end + draw_time(rng, 1800, 7200);
        plan.activities = {{ActivityType::kHome, hh.home_node, home_end},
                           {ActivityType::kSecondary, secondary, secondary_end},
                           {ActivityType::kHome, hh.home_node, -1}};
      }
      s.plans.push_back(std::move(plan));
    }
  }
  return s;
}

}  // namespace policysim
