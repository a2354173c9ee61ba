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

#include "policysim/sim/events.hpp"

#include <fstream>
#include <sstream>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"

namespace policysim {

std::string vehicle_label(const VehicleId& v, const Scenario& z) {
  switch (v.kind) {
    case VehicleKind::kCar:
      return "car:" + std::to_string(z.agent_person(v.index).id);
    case VehicleKind::kRideHail:
      return "rh:" + std::to_string(v.index);
    case VehicleKind::kBus:
      return "bus:" + std::to_string(v.route_id) + ":" + std::to_string(v.index);
  }
  return "?";
}

std::string vehicle_type_label(int vehicle_type, const Scenario& z) {
  if (vehicle_type == kCarVehicleType) return "CAR";
  if (vehicle_type == kRideHailVehicleType) return "RIDEHAIL";
  return z.vehicle_types.at(vehicle_type).id;
}

const char* vehicle_kind_mode(VehicleKind k) {
  switch (k) {
    case VehicleKind::kCar:
      return "car";
    case VehicleKind::kRideHail:
      return "ride_hail";
    case VehicleKind::kBus:
      return "bus";
  }
  return "?";
}

const char* replan_reason_name(ReplanReason r) {
  switch (r) {
    case ReplanReason::kNoRideHail:
      return "no_ridehail";
    case ReplanReason::kNoTransit:
      return "no_transit";
    case ReplanReason::kMaxWait:
      return "max_wait";
  }
  return "?";
}

double event_time(const Event& e) {
  return std::visit([](const auto& x) { return x.time; }, e);
}

namespace {

struct TypeName {
  const char* operator()(const ActivityStartEvent&) const { return "actstart"; }
  const char* operator()(const ActivityEndEvent&) const { return "actend"; }
  const char* operator()(const DepartureEvent&) const { return "departure"; }
  const char* operator()(const PersonEntersVehicleEvent&) const { return "PersonEntersVehicle"; }
  const char* operator()(const PersonLeavesVehicleEvent&) const { return "PersonLeavesVehicle"; }
  const char* operator()(const WaitingAtStopEvent&) const { return "WaitingAtStop"; }
  const char* operator()(const PathTraversalEvent&) const { return "PathTraversal"; }
  const char* operator()(const BoardingDeniedEvent&) const { return "BoardingDenied"; }
  const char* operator()(const ArrivalEvent&) const { return "arrival"; }
  const char* operator()(const PersonCostEvent&) const { return "PersonCost"; }
  const char* operator()(const ReplannedEvent&) const { return "Replanned"; }
};

enum Col {
  kTime,
  kType,
  kPerson,
  kLeg,
  kMode,
  kActivity,
  kNode,
  kVehicle,
  kVehicleType,
  kLinks,
  kLinkExits,
  kEnter,
  kExit,
  kOccupancy,
  kFuel,
  kDistance,
  kFreeFlow,
  kGross,
  kIncentive,
  kNet,
  kTruncated,
  kDetail,
  kNumCols
};

std::string join_ints(const std::vector<int>& v, const Network& net) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(net.link(v[i]).id);
  }
  return s;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += format_double(v[i]);
  }
  return s;
}

class RowBuilder {
 public:
  explicit RowBuilder(const Scenario& z) : z_(z) {}

  std::vector<std::string> build(const Event& e) {
    cells_.assign(kNumCols, std::string());
    cells_[kType] = std::visit(TypeName{}, e);
    cells_[kTime] = format_double(event_time(e));
    std::visit(*this, e);
    return cells_;
  }

  void person(int agent) { cells_[kPerson] = std::to_string(z_.agent_person(agent).id); }
  void node(int n) { cells_[kNode] = std::to_string(z_.network.node(n).id); }

  void operator()(const ActivityStartEvent& e) {
    person(e.agent);
    cells_[kActivity] = activity_name(e.type);
    node(e.node);
  }
  void operator()(const ActivityEndEvent& e) {
    person(e.agent);
    cells_[kActivity] = activity_name(e.type);
    node(e.node);
  }
  void operator()(const DepartureEvent& e) {
    person(e.agent);
    cells_[kLeg] = std::to_string(e.leg);
    cells_[kMode] = trip_mode_name(e.mode);
  }
  void operator()(const PersonEntersVehicleEvent& e) {
    person(e.agent);
    cells_[kVehicle] = vehicle_label(e.vehicle, z_);
  }
  void operator()(const PersonLeavesVehicleEvent& e) {
    person(e.agent);
    cells_[kVehicle] = vehicle_label(e.vehicle, z_);
  }
  void operator()(const WaitingAtStopEvent& e) {
    person(e.agent);
    node(e.node);
    cells_[kDetail] = std::to_string(e.route_id);
  }
  void operator()(const PathTraversalEvent& e) {
    cells_[kVehicle] = vehicle_label(e.vehicle, z_);
    cells_[kVehicleType] = vehicle_type_label(e.vehicle_type, z_);
    cells_[kMode] = vehicle_kind_mode(e.vehicle.kind);
    cells_[kLinks] = join_ints(e.links, z_.network);
    cells_[kLinkExits] = join_doubles(e.link_exit_times);
    cells_[kEnter] = format_double(e.enter_time);
    cells_[kExit] = format_double(e.exit_time);
    cells_[kOccupancy] = std::to_string(e.occupancy);
    cells_[kFuel] = format_double(e.fuel_joules);
    cells_[kDistance] = format_double(e.distance_m);
    cells_[kFreeFlow] = format_double(e.free_flow_s);
  }
  void operator()(const BoardingDeniedEvent& e) {
    person(e.agent);
    cells_[kVehicle] = vehicle_label(e.vehicle, z_);
    node(e.node);
  }
  void operator()(const ArrivalEvent& e) {
    person(e.agent);
    cells_[kLeg] = std::to_string(e.leg);
    cells_[kMode] = trip_mode_name(e.mode);
    cells_[kDistance] = format_double(e.distance_m);
    cells_[kTruncated] = e.truncated ? "1" : "0";
  }
  void operator()(const PersonCostEvent& e) {
    person(e.agent);
    cells_[kLeg] = std::to_string(e.leg);
    cells_[kMode] = trip_mode_name(e.mode);
    cells_[kGross] = format_double(e.gross_usd);
    cells_[kIncentive] = format_double(e.incentive_usd);
    cells_[kNet] = format_double(e.net_usd);
  }
  void operator()(const ReplannedEvent& e) {
    person(e.agent);
    cells_[kLeg] = std::to_string(e.leg);
    cells_[kMode] = trip_mode_name(e.to);
    cells_[kDetail] =
        std::string(trip_mode_name(e.from)) + ">" + trip_mode_name(e.to) + ":" + replan_reason_name(e.reason);
  }

 private:
  const Scenario& z_;
  std::vector<std::string> cells_;
};

}  // namespace

const char* event_type_name(const Event& e) { return std::visit(TypeName{}, e); }

const std::vector<std::string> kEventColumns{
    "time",         "type",      "person",          "leg",        "mode",      "activity",  "node",   "vehicle",
    "vehicle_type", "links",     "link_exit_times", "enter_time", "exit_time", "occupancy", "fuel_j", "distance_m",
    "free_flow_s",  "gross_usd", "incentive_usd",   "net_usd",    "truncated", "detail"};

void write_events_csv(const EventLog& log, const Scenario& z, std::ostream& out) {
  CsvWriter w(out);
  w.row(kEventColumns);
  RowBuilder rb(z);
  for (const auto& e : log.events) w.row(rb.build(e));
}

void write_events_csv(const EventLog& log, const Scenario& z, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeError("cannot write " + path.string());
  write_events_csv(log, z, out);
}

uint64_t event_log_hash(const EventLog& log, const Scenario& z) {
  std::ostringstream ss;
  write_events_csv(log, z, ss);
  const auto text = ss.str();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace policysim
