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

#include "policysim/scenario/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"

namespace fs = std::filesystem;

namespace policysim {

namespace {

const std::vector<std::string> kNodesHeader{"node_id", "x_m", "y_m"};
const std::vector<std::string> kNetworkHeader{"link_id",   "from",         "to",   "length_m",
                                              "speed_mps", "capacity_vph", "modes"};
const std::vector<std::string> kVehicleHeader{"id",    "fuel_type", "joules_per_meter", "cost_per_hour",
                                              "seats", "standing"};
const std::vector<std::string> kRoutesHeader{"route_id", "agency_id", "vehicle_type_id", "stops", "periods"};
const std::vector<std::string> kPopulationHeader{"person_id", "age", "household_id", "income_usd", "home_node"};
const std::vector<std::string> kPlansHeader{"person_id", "seq", "activity", "node", "end_time"};

fs::path require(const fs::path& dir, const char* name) {
  auto p = dir / name;
  if (!fs::exists(p)) throw LoadError(name, -1, "FILE_MISSING", "required file not found in " + dir.string());
  return p;
}

double to_real(const CsvTable& t, std::size_t row, const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw LoadError(t.name(), t.line(row), "CSV_TYPE", std::string(what) + " expects a number, got '" + text + "'");
  }
}

void load_network(const fs::path& dir, Scenario& s) {
  auto& net = s.network;
  if (fs::exists(dir / "nodes.csv")) {
    const auto nodes = CsvTable::read(dir / "nodes.csv");
    nodes.require_header(kNodesHeader);
    for (std::size_t r = 0; r < nodes.size(); ++r) {
      const auto id = nodes.integer(r, "node_id");
      if (net.node_index(id)) throw LoadError("nodes.csv", nodes.line(r), "NET_DUPLICATE_NODE", "duplicate node id");
      net.add_node(Node{id, nodes.real(r, "x_m"), nodes.real(r, "y_m")});
    }
  }
  const bool infer_nodes = net.num_nodes() == 0;
  const auto links = CsvTable::read(require(dir, "network.csv"));
  links.require_header(kNetworkHeader);
  for (std::size_t r = 0; r < links.size(); ++r) {
    Link l;
    l.id = links.integer(r, "link_id");
    if (net.link_index(l.id)) throw LoadError("network.csv", links.line(r), "NET_DUPLICATE_LINK", "duplicate link id");
    auto endpoint = [&](const char* col) {
      const auto id = links.integer(r, col);
      auto idx = net.node_index(id);
      if (!idx) {
        if (!infer_nodes) {
          throw LoadError("network.csv", links.line(r), "NET_LINK_ENDPOINT",
                          std::string(col) + " node " + std::to_string(id) + " does not exist");
        }
        idx = net.add_node(Node{id, 0, 0});
      }
      return *idx;
    };
    l.from = endpoint("from");
    l.to = endpoint("to");
    l.length_m = links.real(r, "length_m");
    l.speed_mps = links.real(r, "speed_mps");
    l.capacity_vph = links.real(r, "capacity_vph");
    try {
      l.modes = parse_mode_bits(links.str(r, "modes"));
    } catch (const std::invalid_argument& e) {
      throw LoadError("network.csv", links.line(r), "NET_MODES", e.what());
    }
    if (!(l.length_m > 0)) throw LoadError("network.csv", links.line(r), "NET_LENGTH", "length_m must be > 0");
    if (!(l.speed_mps > 0)) throw LoadError("network.csv", links.line(r), "NET_SPEED", "speed_mps must be > 0");
    if (!(l.capacity_vph > 0))
      throw LoadError("network.csv", links.line(r), "NET_CAPACITY", "capacity_vph must be > 0");
    net.add_link(l);
  }
}

void load_vehicle_types(const fs::path& dir, Scenario& s) {
  const auto t = CsvTable::read(require(dir, "vehicle_types.csv"));
  t.require_header(kVehicleHeader);
  for (std::size_t r = 0; r < t.size(); ++r) {
    VehicleType v;
    v.id = t.str(r, "id");
    v.fuel_type = t.str(r, "fuel_type");
    v.joules_per_meter = t.real(r, "joules_per_meter");
    v.cost_per_hour = t.real(r, "cost_per_hour");
    v.seats = static_cast<int>(t.integer(r, "seats"));
    v.standing = static_cast<int>(t.integer(r, "standing"));
    if (s.vehicle_type_index(v.id)) throw LoadError(t.name(), t.line(r), "VTYPE_DUPLICATE", "duplicate id " + v.id);
    if (v.seats < 1) throw LoadError(t.name(), t.line(r), "VTYPE_SEATS", "seats must be >= 1");
    if (v.standing < 0) throw LoadError(t.name(), t.line(r), "VTYPE_STANDING", "standing must be >= 0");
    if (!(v.joules_per_meter > 0)) throw LoadError(t.name(), t.line(r), "VTYPE_FUEL", "joules_per_meter must be > 0");
    if (v.cost_per_hour < 0) throw LoadError(t.name(), t.line(r), "VTYPE_COST", "cost_per_hour must be >= 0");
    s.vehicle_types.push_back(std::move(v));
  }
}

void load_routes(const fs::path& dir, Scenario& s) {
  const auto t = CsvTable::read(require(dir, "routes.csv"));
  t.require_header(kRoutesHeader);
  for (std::size_t r = 0; r < t.size(); ++r) {
    TransitRoute route;
    route.id = t.integer(r, "route_id");
    route.agency = t.str(r, "agency_id");
    route.source_line = t.line(r);
    if (s.route_index(route.id)) throw LoadError(t.name(), t.line(r), "ROUTE_DUPLICATE", "duplicate route id");
    const auto vt = s.vehicle_type_index(t.str(r, "vehicle_type_id"));
    if (!vt)
      throw LoadError(t.name(), t.line(r), "ROUTE_VEHICLE_TYPE", "unknown vehicle type " + t.str(r, "vehicle_type_id"));
    route.default_vehicle_type = *vt;
    for (const auto& stop : split(t.str(r, "stops"), ';')) {
      const auto parts = split(stop, ':');
      if (parts.empty() || parts.size() > 2)
        throw LoadError(t.name(), t.line(r), "ROUTE_STOPS", "bad stop '" + stop + "'");
      const auto node_id = static_cast<int64_t>(to_real(t, r, parts[0], "stop node"));
      const auto idx = s.network.node_index(node_id);
      if (!idx) throw LoadError(t.name(), t.line(r), "ROUTE_STOP_NODE", "stop node " + parts[0] + " does not exist");
      TransitStop ts{*idx, 20.0};
      if (parts.size() == 2) ts.dwell_s = to_real(t, r, parts[1], "dwell");
      route.stops.push_back(ts);
    }
    for (const auto& period : split(t.str(r, "periods"), ';')) {
      const auto parts = split(period, '-');
      if (parts.size() != 3) throw LoadError(t.name(), t.line(r), "ROUTE_PERIODS", "bad period '" + period + "'");
      route.periods.push_back(
          {to_real(t, r, parts[0], "start"), to_real(t, r, parts[1], "end"), to_real(t, r, parts[2], "headway")});
    }
    s.routes.push_back(std::move(route));
  }
}

void load_population(const fs::path& dir, Scenario& s) {
  const auto t = CsvTable::read(require(dir, "population.csv"));
  t.require_header(kPopulationHeader);
  std::unordered_map<int64_t, int> hh_index;
  std::unordered_map<int64_t, int> person_index;
  for (std::size_t r = 0; r < t.size(); ++r) {
    Person p;
    p.id = t.integer(r, "person_id");
    p.age = static_cast<int>(t.integer(r, "age"));
    p.source_line = t.line(r);
    if (person_index.count(p.id)) throw LoadError(t.name(), t.line(r), "PERSON_DUPLICATE", "duplicate person id");
    if (p.age < 0 || p.age > 120) throw LoadError(t.name(), t.line(r), "PERSON_AGE", "age must be in [0, 120]");
    const auto hh_id = t.integer(r, "household_id");
    const double income = t.real(r, "income_usd");
    const auto home_id = t.integer(r, "home_node");
    const auto home = s.network.node_index(home_id);
    if (!home)
      throw LoadError(t.name(), t.line(r), "HOUSEHOLD_HOME",
                      "home node " + std::to_string(home_id) + " does not exist");
    if (!(income > 0)) throw LoadError(t.name(), t.line(r), "HOUSEHOLD_INCOME", "household income must be > 0");
    auto it = hh_index.find(hh_id);
    if (it == hh_index.end()) {
      it = hh_index.emplace(hh_id, static_cast<int>(s.households.size())).first;
      s.households.push_back(Household{hh_id, income, *home});
    } else {
      const auto& hh = s.households[it->second];
      if (hh.income_usd != income || hh.home_node != *home) {
        throw LoadError(t.name(), t.line(r), "HOUSEHOLD_CONSISTENCY", "household attributes differ between members");
      }
    }
    p.household = it->second;
    person_index.emplace(p.id, static_cast<int>(s.persons.size()));
    s.persons.push_back(p);
  }

  const auto plans = CsvTable::read(require(dir, "plans.csv"));
  plans.require_header(kPlansHeader);
  std::map<int, std::vector<std::pair<int64_t, Activity>>> by_person;
  std::vector<int> order;
  for (std::size_t r = 0; r < plans.size(); ++r) {
    const auto pid = plans.integer(r, "person_id");
    auto pit = person_index.find(pid);
    if (pit == person_index.end()) {
      throw LoadError(plans.name(), plans.line(r), "PLAN_PERSON", "person " + std::to_string(pid) + " does not exist");
    }
    Activity a;
    const auto type = parse_activity(plans.str(r, "activity"));
    if (!type)
      throw LoadError(plans.name(), plans.line(r), "PLAN_ACTIVITY",
                      "unknown activity '" + plans.str(r, "activity") + "'");
    a.type = *type;
    const auto node = s.network.node_index(plans.integer(r, "node"));
    if (!node) throw LoadError(plans.name(), plans.line(r), "PLAN_NODE", "activity node does not exist");
    a.node = *node;
    a.end_time_s = plans.blank(r, "end_time") ? -1.0 : plans.real(r, "end_time");
    a.source_line = plans.line(r);
    if (!by_person.count(pit->second)) order.push_back(pit->second);
    by_person[pit->second].emplace_back(plans.integer(r, "seq"), a);
  }
  for (int person : order) {
    auto& rows = by_person[person];
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Plan plan;
    plan.person = person;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k > 0 && rows[k].first == rows[k - 1].first) {
        throw LoadError(plans.name(), rows[k].second.source_line, "PLAN_SEQ", "duplicate seq");
      }
      plan.activities.push_back(rows[k].second);
    }
    s.plans.push_back(std::move(plan));
  }
}

}  // namespace

Scenario load_scenario(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw LoadError(dir.string(), -1, "FILE_MISSING", "scenario directory not found");
  Scenario s;
  {
    const auto path = require(dir, "config.txt");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    s.config = GlobalConfig::from_text(ss.str(), "config.txt");
  }
  load_network(dir, s);
  load_vehicle_types(dir, s);
  load_routes(dir, s);
  load_population(dir, s);
  validate_scenario(s);
  return s;
}

void save_scenario(const Scenario& s, const fs::path& dir) {
  fs::create_directories(dir);
  const auto& net = s.network;
  {
    CsvWriter w(dir / "nodes.csv");
    w.row(kNodesHeader);
    for (const auto& n : net.nodes()) w.row({std::to_string(n.id), format_double(n.x_m), format_double(n.y_m)});
  }
  {
    CsvWriter w(dir / "network.csv");
    w.row(kNetworkHeader);
    for (const auto& l : net.links()) {
      w.row({std::to_string(l.id), std::to_string(net.node(l.from).id), std::to_string(net.node(l.to).id),
             format_double(l.length_m), format_double(l.speed_mps), format_double(l.capacity_vph),
             format_mode_bits(l.modes)});
    }
  }
  {
    CsvWriter w(dir / "vehicle_types.csv");
    w.row(kVehicleHeader);
    for (const auto& v : s.vehicle_types) {
      w.row({v.id, v.fuel_type, format_double(v.joules_per_meter), format_double(v.cost_per_hour),
             std::to_string(v.seats), std::to_string(v.standing)});
    }
  }
  {
    CsvWriter w(dir / "routes.csv");
    w.row(kRoutesHeader);
    for (const auto& r : s.routes) {
      std::string stops, periods;
      for (const auto& st : r.stops) {
        stops += (stops.empty() ? "" : ";") + std::to_string(net.node(st.node).id) + ":" + format_double(st.dwell_s);
      }
      for (const auto& p : r.periods) {
        periods += (periods.empty() ? "" : ";") + format_double(p.start_s) + "-" + format_double(p.end_s) + "-" +
                   format_double(p.headway_s);
      }
      w.row({std::to_string(r.id), r.agency, s.vehicle_types[r.default_vehicle_type].id, stops, periods});
    }
  }
  {
    CsvWriter w(dir / "population.csv");
    w.row(kPopulationHeader);
    for (const auto& p : s.persons) {
      const auto& hh = s.households[p.household];
      w.row({std::to_string(p.id), std::to_string(p.age), std::to_string(hh.id), format_double(hh.income_usd),
             std::to_string(net.node(hh.home_node).id)});
    }
  }
  {
    CsvWriter w(dir / "plans.csv");
    w.row(kPlansHeader);
    for (const auto& plan : s.plans) {
      const auto pid = std::to_string(s.persons[plan.person].id);
      for (std::size_t k = 0; k < plan.activities.size(); ++k) {
        const auto& a = plan.activities[k];
        w.row({pid, std::to_string(k), activity_name(a.type), std::to_string(net.node(a.node).id),
               a.end_time_s < 0 ? std::string() : format_double(a.end_time_s)});
      }
    }
  }
  {
    std::ofstream out(dir / "config.txt", std::ios::binary);
    out << s.config.to_text();
  }
}

}  // namespace policysim
