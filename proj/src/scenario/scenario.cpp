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

#include "policysim/scenario/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "policysim/common/config_file.hpp"
#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"

namespace policysim {

const char* activity_name(ActivityType t) {
  switch (t) {
    case ActivityType::kHome:
      return "Home";
    case ActivityType::kWork:
      return "Work";
    case ActivityType::kSecondary:
      return "Secondary";
  }
  return "?";
}

std::optional<ActivityType> parse_activity(const std::string& s) {
  if (s == "Home") return ActivityType::kHome;
  if (s == "Work") return ActivityType::kWork;
  if (s == "Secondary") return ActivityType::kSecondary;
  return std::nullopt;
}

const char* trip_mode_name(TripMode m) {
  switch (m) {
    case TripMode::kWalk:
      return "walk";
    case TripMode::kCar:
      return "car";
    case TripMode::kWalkTransit:
      return "walk_transit";
    case TripMode::kRideHail:
      return "ride_hail";
  }
  return "?";
}

double GlobalConfig::asc(TripMode m) const {
  switch (m) {
    case TripMode::kWalk:
      return asc_walk;
    case TripMode::kCar:
      return asc_car;
    case TripMode::kWalkTransit:
      return asc_walk_transit;
    case TripMode::kRideHail:
      return asc_ride_hail;
  }
  return 0;
}

namespace {

struct Field {
  const char* key;
  std::function<void(const std::string&, const std::string&, long)> set;
  std::function<std::string()> get;
};

std::vector<double> parse_list(const std::string& file, long line, const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& tok : split(v, ',')) out.push_back(parse_real(file, line, key, tok));
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::vector<Field> fields(GlobalConfig& c) {
  auto real = [](const char* key, double& ref) {
    return Field{key,
                 [&ref, key](const std::string& f, const std::string& v, long l) { ref = parse_real(f, l, key, v); },
                 [&ref] { return format_double(ref); }};
  };
  auto integer = [](const char* key, int& ref) {
    return Field{key,
                 [&ref, key](const std::string& f, const std::string& v, long l) {
                   ref = static_cast<int>(parse_real(f, l, key, v));
                 },
                 [&ref] { return std::to_string(ref); }};
  };
  auto boolean = [](const char* key, bool& ref) {
    return Field{
        key, [&ref, key](const std::string& f, const std::string& v, long l) { ref = parse_real(f, l, key, v) != 0.0; },
        [&ref] { return std::string(ref ? "1" : "0"); }};
  };
  auto list = [](const char* key, std::vector<double>& ref) {
    return Field{key,
                 [&ref, key](const std::string& f, const std::string& v, long l) { ref = parse_list(f, l, key, v); },
                 [&ref] { return format_list(ref); }};
  };
  return {
      real("ridehail_fleet_fraction", c.ridehail_fleet_fraction),
      real("ridehail_base_usd", c.ridehail_base_usd),
      real("ridehail_per_mile_usd", c.ridehail_per_mile_usd),
      real("ridehail_per_minute_usd", c.ridehail_per_minute_usd),
      real("value_of_time_usd_per_hour", c.value_of_time_usd_per_hour),
      real("walk_speed_mps", c.walk_speed_mps),
      real("car_operating_cost_usd_per_mile", c.car_operating_cost_usd_per_mile),
      real("car_joules_per_meter", c.car_joules_per_meter),
      Field{"car_fuel_type", [&c](const std::string&, const std::string& v, long) { c.car_fuel_type = v; },
            [&c] { return c.car_fuel_type; }},
      real("transit_default_fare_usd", c.transit_default_fare_usd),
      real("beta_time_per_hour", c.beta_time_per_hour),
      real("beta_cost_per_usd", c.beta_cost_per_usd),
      real("asc_walk", c.asc_walk),
      real("asc_car", c.asc_car),
      real("asc_walk_transit", c.asc_walk_transit),
      real("asc_ride_hail", c.asc_ride_hail),
      real("replanning_fraction", c.replanning_fraction),
      integer("plan_memory_size", c.plan_memory_size),
      real("plan_selection_temperature", c.plan_selection_temperature),
      real("transit_max_walk_m", c.transit_max_walk_m),
      real("transit_max_wait_s", c.transit_max_wait_s),
      real("ridehail_max_pickup_wait_s", c.ridehail_max_pickup_wait_s),
      real("ridehail_expected_wait_s", c.ridehail_expected_wait_s),
      boolean("incentive_floor", c.incentive_floor),
      boolean("stop_at_convergence", c.stop_at_convergence),
      integer("convergence_window", c.convergence_window),
      real("convergence_tol", c.convergence_tol),
      real("accessibility_threshold_s", c.accessibility_threshold_s),
      list("crowding_band_edges", c.crowding_band_edges),
      list("crowding_band_multipliers", c.crowding_band_multipliers),
  };
}

const char* const kMapPrefixes[] = {"fuel_price_usd_per_mj.", "pm25_g_per_mile.", "ghg_g_per_mj."};

std::map<std::string, double>& map_for(GlobalConfig& c, int which) {
  switch (which) {
    case 0:
      return c.fuel_price_usd_per_mj;
    case 1:
      return c.pm25_g_per_mile;
    default:
      return c.ghg_g_per_mj;
  }
}

}  // namespace

GlobalConfig GlobalConfig::from_text(const std::string& text, const std::string& name) {
  GlobalConfig c;
  const auto kv = KeyValueFile::parse(text, name);
  auto fs = fields(c);
  for (const auto& [key, value] : kv.entries) {
    const long line = kv.lines.at(key);
    bool handled = false;
    for (auto& f : fs) {
      if (key == f.key) {
        f.set(name, value, line);
        handled = true;
        break;
      }
    }
    for (int m = 0; m < 3 && !handled; ++m) {
      const std::string prefix = kMapPrefixes[m];
      if (key.rfind(prefix, 0) == 0 && key.size() > prefix.size()) {
        map_for(c, m)[key.substr(prefix.size())] = parse_real(name, line, key, value);
        handled = true;
      }
    }
    if (!handled) throw LoadError(name, line, "CONFIG_UNKNOWN_KEY", "unknown key " + key);
  }
  if (!(c.ridehail_fleet_fraction > 0.0 && c.ridehail_fleet_fraction <= 1.0)) {
    throw LoadError(name, kv.lines.count("ridehail_fleet_fraction") ? kv.lines.at("ridehail_fleet_fraction") : -1,
                    "CONFIG_FLEET_FRACTION", "ride-hail fleet fraction must be in (0, 1]");
  }
  if (c.crowding_band_multipliers.size() != c.crowding_band_edges.size() + 1) {
    throw LoadError(name, -1, "CONFIG_CROWDING_BANDS", "need one more multiplier than band edges");
  }
  if (c.plan_memory_size < 1) throw LoadError(name, -1, "CONFIG_PLAN_MEMORY", "plan_memory_size must be >= 1");
  if (c.walk_speed_mps <= 0) throw LoadError(name, -1, "CONFIG_WALK_SPEED", "walk_speed_mps must be > 0");
  return c;
}

std::string GlobalConfig::to_text() const {
  GlobalConfig copy = *this;
  std::ostringstream out;
  for (auto& f : fields(copy)) out << f.key << '=' << f.get() << '\n';
  for (int m = 0; m < 3; ++m) {
    for (const auto& [k, v] : map_for(copy, m)) out << kMapPrefixes[m] << k << '=' << format_double(v) << '\n';
  }
  return out.str();
}

std::optional<int> Scenario::route_index(int64_t id) const {
  for (std::size_t i = 0; i < routes.size(); ++i) {
    if (routes[i].id == id) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> Scenario::vehicle_type_index(const std::string& id) const {
  for (std::size_t i = 0; i < vehicle_types.size(); ++i) {
    if (vehicle_types[i].id == id) return static_cast<int>(i);
  }
  return std::nullopt;
}

int Scenario::ridehail_fleet_size() const {
  return static_cast<int>(std::ceil(config.ridehail_fleet_fraction * static_cast<double>(plans.size()) - 1e-9));
}

void validate_scenario(const Scenario& s) {
  const auto& net = s.network;
  for (std::size_t i = 0; i < net.num_links(); ++i) {
    const auto& l = net.link(static_cast<int>(i));
    const long row = static_cast<long>(i) + 2;
    if (l.from < 0 || l.to < 0 || l.from >= static_cast<int>(net.num_nodes()) ||
        l.to >= static_cast<int>(net.num_nodes())) {
      throw LoadError("network.csv", row, "NET_LINK_ENDPOINT", "link endpoint references unknown node");
    }
    if (!(l.length_m > 0)) throw LoadError("network.csv", row, "NET_LENGTH", "length_m must be > 0");
    if (!(l.speed_mps > 0)) throw LoadError("network.csv", row, "NET_SPEED", "speed_mps must be > 0");
    if (!(l.capacity_vph > 0)) throw LoadError("network.csv", row, "NET_CAPACITY", "capacity_vph must be > 0");
  }

  for (std::size_t i = 0; i < s.vehicle_types.size(); ++i) {
    const auto& v = s.vehicle_types[i];
    const long row = static_cast<long>(i) + 2;
    if (v.seats < 1) throw LoadError("vehicle_types.csv", row, "VTYPE_SEATS", v.id + ": seats must be >= 1");
    if (v.standing < 0) throw LoadError("vehicle_types.csv", row, "VTYPE_STANDING", v.id + ": standing must be >= 0");
    if (!(v.joules_per_meter > 0)) {
      throw LoadError("vehicle_types.csv", row, "VTYPE_FUEL", v.id + ": joules_per_meter must be > 0");
    }
    if (v.cost_per_hour < 0) throw LoadError("vehicle_types.csv", row, "VTYPE_COST", v.id + ": cost must be >= 0");
  }

  for (const auto& r : s.routes) {
    const long row = r.source_line;
    const std::string rid = std::to_string(r.id);
    if (r.stops.size() < 2) throw LoadError("routes.csv", row, "ROUTE_STOPS", "route " + rid + " needs >= 2 stops");
    if (r.default_vehicle_type < 0 || r.default_vehicle_type >= static_cast<int>(s.vehicle_types.size())) {
      throw LoadError("routes.csv", row, "ROUTE_VEHICLE_TYPE", "route " + rid + " has unknown vehicle type");
    }
    for (std::size_t k = 0; k + 1 < r.stops.size(); ++k) {
      const auto reach = net.reachable(r.stops[k].node, kCarBit);
      if (!reach[r.stops[k + 1].node]) {
        throw LoadError(
            "routes.csv", row, "ROUTE_STOP_PATH",
            "route " + rid + ": no car path between stops " + std::to_string(k) + " and " + std::to_string(k + 1));
      }
    }
    auto periods = r.periods;
    std::sort(periods.begin(), periods.end(),
              [](const ServicePeriod& a, const ServicePeriod& b) { return a.start_s < b.start_s; });
    for (std::size_t k = 0; k < periods.size(); ++k) {
      const auto& p = periods[k];
      if (!(p.start_s < p.end_s) || p.start_s < kDayStart || p.end_s > kDayEnd || !(p.headway_s > 0)) {
        throw LoadError("routes.csv", row, "ROUTE_PERIODS", "route " + rid + ": invalid service period");
      }
      if (k > 0 && p.start_s < periods[k - 1].end_s) {
        throw LoadError("routes.csv", row, "ROUTE_PERIODS", "route " + rid + ": overlapping service periods");
      }
    }
  }

  for (const auto& h : s.households) {
    if (!(h.income_usd > 0)) {
      throw LoadError("population.csv", -1, "HOUSEHOLD_INCOME",
                      "household " + std::to_string(h.id) + " income must be > 0");
    }
    if (h.home_node < 0 || h.home_node >= static_cast<int>(net.num_nodes())) {
      throw LoadError("population.csv", -1, "HOUSEHOLD_HOME", "household " + std::to_string(h.id) + " home node");
    }
  }
  for (const auto& p : s.persons) {
    if (p.household < 0 || p.household >= static_cast<int>(s.households.size())) {
      throw LoadError("population.csv", p.source_line, "PERSON_HOUSEHOLD", "unknown household");
    }
    if (p.age < 0 || p.age > 120) {
      throw LoadError("population.csv", p.source_line, "PERSON_AGE", "age must be in [0, 120]");
    }
  }

  std::set<int> activity_nodes;
  for (const auto& plan : s.plans) {
    const auto& person = s.persons.at(plan.person);
    const auto& acts = plan.activities;
    const long first_line = acts.empty() ? -1 : acts.front().source_line;
    if (acts.empty() || acts.front().type != ActivityType::kHome || acts.back().type != ActivityType::kHome) {
      throw LoadError("plans.csv", first_line, "PLAN_HOME_ENDS",
                      "plan of person " + std::to_string(person.id) + " must begin and end with Home");
    }
    for (std::size_t k = 0; k < acts.size(); ++k) {
      const auto& a = acts[k];
      if (a.node < 0 || a.node >= static_cast<int>(net.num_nodes())) {
        throw LoadError("plans.csv", a.source_line, "PLAN_NODE", "unknown activity node");
      }
      activity_nodes.insert(a.node);
      if (a.type == ActivityType::kWork && person.age < 18) {
        throw LoadError("plans.csv", a.source_line, "PLAN_WORK_AGE",
                        "agents under the age of 18 must not have a Work activity (person " +
                            std::to_string(person.id) + ", age " + std::to_string(person.age) + ")");
      }
      if (k + 1 < acts.size()) {
        if (!(a.end_time_s >= kDayStart && a.end_time_s <= kDayEnd)) {
          throw LoadError("plans.csv", a.source_line, "PLAN_TIMES", "end time missing or outside the day");
        }
        if (k > 0 && !(a.end_time_s > acts[k - 1].end_time_s)) {
          throw LoadError("plans.csv", a.source_line, "PLAN_TIMES", "planned end times must strictly increase");
        }
      }
    }
  }
  for (const auto& r : s.routes) {
    for (const auto& st : r.stops) activity_nodes.insert(st.node);
  }

  const std::vector<int> subset(activity_nodes.begin(), activity_nodes.end());
  if (!net.strongly_connected(subset, kCarBit)) {
    throw LoadError("network.csv", -1, "NET_CAR_CONNECTIVITY",
                    "car subgraph not strongly connected over activity locations");
  }
  if (!net.strongly_connected(subset, kWalkBit)) {
    throw LoadError("network.csv", -1, "NET_WALK_CONNECTIVITY",
                    "walk subgraph not strongly connected over activity locations");
  }
  if (!(s.config.ridehail_fleet_fraction > 0 && s.config.ridehail_fleet_fraction <= 1)) {
    throw LoadError("config.txt", -1, "CONFIG_FLEET_FRACTION", "ride-hail fleet fraction must be in (0, 1]");
  }
}

}  // namespace policysim
