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

#include "policysim/sim/choice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace policysim {

std::vector<double> logit_probabilities(std::span<const double> utilities) {
  if (utilities.empty()) throw std::invalid_argument("mode_choice: empty alternative set");
  double top = -std::numeric_limits<double>::infinity();
  for (double u : utilities) {
    if (!std::isfinite(u)) throw std::invalid_argument("mode_choice: non-finite utility");
    top = std::max(top, u);
  }
  std::vector<double> p(utilities.size());
  double total = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(utilities[i] - top);
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

std::size_t mode_choice(std::span<const double> utilities, Rng& rng) {
  const auto p = logit_probabilities(utilities);
  const double u = uniform01(rng);
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i;
  }
  // Rounding left u just above the cumulative total; take the last alternative with mass.
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] > 0) return i;
  }
  return 0;
}

std::optional<IncentiveMode> incentive_mode_for(TripMode m) {
  switch (m) {
    case TripMode::kRideHail:
      return IncentiveMode::kRideHail;
    case TripMode::kWalkTransit:
      return IncentiveMode::kWalkTransit;
    default:
      return std::nullopt;
  }
}

double net_cost(double gross_usd, double incentive_usd, bool floor) {
  const double net = gross_usd - incentive_usd;
  return floor ? std::max(0.0, net) : net;
}

double incentive_for_trip(TripMode m, int age, double income, const DecisionVector& d) {
  const auto im = incentive_mode_for(m);
  return im ? d.incentive_for(*im, age, income) : 0.0;
}

double crowding_multiplier(double load_factor, const GlobalConfig& c) {
  std::size_t band = 0;
  while (band < c.crowding_band_edges.size() && load_factor > c.crowding_band_edges[band]) ++band;
  return c.crowding_band_multipliers[band];
}

double leg_utility(const LegOption& o, int age, double income, const DecisionVector& d, const GlobalConfig& c) {
  const double cost = net_cost(o.gross_cost_usd, incentive_for_trip(o.mode, age, income, d), c.incentive_floor);
  const double hours = (o.duration_s + (o.crowding_factor - 1.0) * o.in_vehicle_s) / 3600.0;
  return -(c.beta_time_per_hour * hours + c.beta_cost_per_usd * cost + c.asc(o.mode));
}

}  // namespace policysim
