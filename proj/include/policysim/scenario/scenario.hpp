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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "policysim/scenario/network.hpp"

namespace policysim {

inline constexpr double kDayStart = 0.0;
inline constexpr double kDayEnd = 86400.0;
inline constexpr double kMetersPerMile = 1609.344;

enum class ActivityType : uint8_t { kHome, kWork, kSecondary };
const char* activity_name(ActivityType t);
std::optional<ActivityType> parse_activity(const std::string& s);

/// Main mode of a trip as chosen by the agent.
enum class TripMode : uint8_t { kWalk, kCar, kWalkTransit, kRideHail };
inline constexpr int kNumTripModes = 4;
const char* trip_mode_name(TripMode m);

struct VehicleType {
  std::string id;
  std::string fuel_type;
  double joules_per_meter = 0;
  double cost_per_hour = 0;
  int seats = 0;
  int standing = 0;

  int capacity() const { return seats + standing; }
};

struct TransitStop {
  int node = 0;  // node index
  double dwell_s = 20.0;
};

struct ServicePeriod {
  double start_s = 0;
  double end_s = 0;
  double headway_s = 0;
};

struct TransitRoute {
  int64_t id = 0;
  std::string agency;
  std::vector<TransitStop> stops;
  std::vector<ServicePeriod> periods;
  int default_vehicle_type = 0;  // index into Scenario::vehicle_types
  long source_line = -1;
};

struct Household {
  int64_t id = 0;
  double income_usd = 0;
  int home_node = 0;
};

struct Person {
  int64_t id = 0;
  int age = 0;
  int household = 0;  // index
  long source_line = -1;
};

struct Activity {
  ActivityType type = ActivityType::kHome;
  int node = 0;
  double end_time_s = -1;  // < 0 for the final activity
  long source_line = -1;
};

/// Alternating activity/leg sequence; legs are implicit between consecutive activities.
struct Plan {
  int person = 0;  // index into Scenario::persons
  std::vector<Activity> activities;

  std::size_t trip_count() const { return activities.empty() ? 0 : activities.size() - 1; }
};

/// Everything in the scenario config file: prices, behaviour parameters, KPI settings.
struct GlobalConfig {
  double ridehail_fleet_fraction = 0.01;
  double ridehail_base_usd = 2.50;
  double ridehail_per_mile_usd = 1.00;
  double ridehail_per_minute_usd = 0.25;
  std::map<std::string, double> fuel_price_usd_per_mj{{"diesel", 0.0205}, {"gasoline", 0.0248}};
  double value_of_time_usd_per_hour = 18.0;
  double walk_speed_mps = 1.4;
  double car_operating_cost_usd_per_mile = 0.25;
  double car_joules_per_meter = 2700.0;
  std::string car_fuel_type = "gasoline";
  std::map<std::string, double> pm25_g_per_mile{{"CAR", 0.012},          {"RIDEHAIL", 0.012},   {"BUS-DEFAULT", 0.060},
                                                {"BUS-SMALL-HD", 0.045}, {"BUS-STD-HD", 0.055}, {"BUS-STD-ART", 0.075}};
  std::map<std::string, double> ghg_g_per_mj{{"diesel", 74.1}, {"gasoline", 73.4}};
  double transit_default_fare_usd = 1.50;

  double beta_time_per_hour = 4.5;
  double beta_cost_per_usd = 0.25;
  double asc_walk = 0.0;
  double asc_car = 0.0;
  double asc_walk_transit = 0.5;
  double asc_ride_hail = 1.0;
  double replanning_fraction = 0.2;
  int plan_memory_size = 4;
  double plan_selection_temperature = 1.0;
  double transit_max_walk_m = 800.0;
  double transit_max_wait_s = 1800.0;
  double ridehail_max_pickup_wait_s = 900.0;
  double ridehail_expected_wait_s = 300.0;
  bool incentive_floor = true;
  bool stop_at_convergence = false;
  int convergence_window = 5;
  double convergence_tol = 1e-3;

  double accessibility_threshold_s = 900.0;
  std::vector<double> crowding_band_edges{1.0, 1.4};
  std::vector<double> crowding_band_multipliers{1.0, 1.5, 2.0};

  double asc(TripMode m) const;

  static GlobalConfig from_text(const std::string& text, const std::string& name);
  std::string to_text() const;
};

struct Scenario {
  Network network;
  std::vector<TransitRoute> routes;
  std::vector<VehicleType> vehicle_types;
  std::vector<Household> households;
  std::vector<Person> persons;
  std::vector<Plan> plans;  // one per agent
  GlobalConfig config;

  std::optional<int> route_index(int64_t id) const;
  std::optional<int> vehicle_type_index(const std::string& id) const;
  int ridehail_fleet_size() const;
  const Person& agent_person(int agent) const { return persons[plans[agent].person]; }
  const Household& agent_household(int agent) const { return households[persons[plans[agent].person].household]; }
};

/// Checks every Scenario invariant; throws LoadError naming file, row and rule.
void validate_scenario(const Scenario& s);

}  // namespace policysim
