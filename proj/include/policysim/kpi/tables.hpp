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

#include <array>
#include <filesystem>
#include <vector>

#include "policysim/scenario/scenario.hpp"
#include "policysim/sim/events.hpp"

namespace policysim {

inline constexpr int kCrowdingBands = 3;

struct LegRecord {
  int agent = 0;
  int leg = 0;
  TripMode planned = TripMode::kWalk;
  TripMode mode = TripMode::kWalk;  // executed
  double depart = 0;
  double arrive = 0;
  double distance_m = 0;
  double gross_usd = 0;
  double incentive_usd = 0;
  double net_usd = 0;
  double wait_s = 0;
  double in_vehicle_s = 0;
  std::array<double, kCrowdingBands> band_hours{};  // transit in-vehicle hours per load-factor band
  double above_seats_hours = 0;
  double delay_s = 0;
  bool congestible = false;  // rode a car, ride-hail vehicle or bus
  bool truncated = false;
  bool fallback = false;

  double duration_s() const { return arrive - depart; }
};

struct TripRecord {
  int agent = 0;
  int trip = 0;
  ActivityType purpose = ActivityType::kHome;  // destination activity
  double duration_s = 0;
  double expenditure_usd = 0;
  double delay_s = 0;
  bool congestible = false;
};

struct TraversalRecord {
  VehicleId vehicle;
  int vehicle_type = 0;
  double enter = 0;
  double exit = 0;
  double distance_m = 0;
  double free_flow_s = 0;
  double fuel_joules = 0;
  int occupancy = 0;

  double realized_s() const { return exit - enter; }
};

struct SimTables {
  std::vector<LegRecord> legs;
  std::vector<TripRecord> trips;
  std::vector<TraversalRecord> traversals;
  /// Realized link times of cars and ride-hail vehicles, summed per link.
  std::vector<double> link_time_sum;
  std::vector<int> link_time_count;

  /// Mean realized time per link, free-flow where the link was unused.
  std::vector<double> mean_link_times(const Network& net) const;
};

/// Throws RuntimeError on malformed ordering (e.g. an arrival without a departure).
SimTables build_tables(const EventLog& log, const Scenario& z);

/// Writes trips.csv, legs.csv and traversals.csv into `dir`.
void write_tables(const SimTables& t, const Scenario& z, const std::filesystem::path& dir);

}  // namespace policysim
