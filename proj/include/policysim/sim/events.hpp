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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "policysim/scenario/scenario.hpp"

namespace policysim {

enum class VehicleKind : uint8_t { kCar, kRideHail, kBus };

/// Car: index = agent. Ride-hail: index = fleet slot. Bus: index = trip number on `route_id`.
struct VehicleId {
  VehicleKind kind = VehicleKind::kCar;
  int index = 0;
  int64_t route_id = 0;

  bool operator==(const VehicleId&) const = default;
  auto operator<=>(const VehicleId&) const = default;
};

/// Vehicle type codes in PathTraversal: catalog index for buses, or one of these.
inline constexpr int kCarVehicleType = -1;
inline constexpr int kRideHailVehicleType = -2;

std::string vehicle_label(const VehicleId& v, const Scenario& z);
std::string vehicle_type_label(int vehicle_type, const Scenario& z);
const char* vehicle_kind_mode(VehicleKind k);  // "car", "ride_hail", "bus"

struct ActivityStartEvent {
  double time;
  int agent;
  ActivityType type;
  int node;
};
struct ActivityEndEvent {
  double time;
  int agent;
  ActivityType type;
  int node;
};
struct DepartureEvent {
  double time;
  int agent;
  int leg;
  TripMode mode;  // planned mode
};
struct PersonEntersVehicleEvent {
  double time;
  int agent;
  VehicleId vehicle;
};
struct PersonLeavesVehicleEvent {
  double time;
  int agent;
  VehicleId vehicle;
};
/// Agent reached a transit stop and started waiting.
struct WaitingAtStopEvent {
  double time;
  int agent;
  int64_t route_id;
  int node;
};
struct PathTraversalEvent {
  double time;  // = exit_time
  VehicleId vehicle;
  int vehicle_type;
  std::vector<int> links;
  std::vector<double> link_exit_times;
  double enter_time;
  double exit_time;
  int occupancy;
  double fuel_joules;
  double distance_m;
  double free_flow_s;
};
struct BoardingDeniedEvent {
  double time;
  int agent;
  VehicleId vehicle;
  int node;
};
struct ArrivalEvent {
  double time;
  int agent;
  int leg;
  TripMode mode;  // executed mode (walk after a fallback)
  double distance_m;
  bool truncated;  // force-completed at the horizon
};
struct PersonCostEvent {
  double time;
  int agent;
  int leg;
  TripMode mode;
  double gross_usd;
  double incentive_usd;  // amount actually paid out
  double net_usd;
};
enum class ReplanReason : uint8_t { kNoRideHail, kNoTransit, kMaxWait };
const char* replan_reason_name(ReplanReason r);
struct ReplannedEvent {
  double time;
  int agent;
  int leg;
  TripMode from;
  TripMode to;
  ReplanReason reason;
};

using Event = std::variant<ActivityStartEvent, ActivityEndEvent, DepartureEvent, PersonEntersVehicleEvent,
                           PersonLeavesVehicleEvent, WaitingAtStopEvent, PathTraversalEvent, BoardingDeniedEvent,
                           ArrivalEvent, PersonCostEvent, ReplannedEvent>;

double event_time(const Event& e);
const char* event_type_name(const Event& e);

struct EventLog {
  std::vector<Event> events;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
};

/// events.csv columns.
extern const std::vector<std::string> kEventColumns;

void write_events_csv(const EventLog& log, const Scenario& z, std::ostream& out);
void write_events_csv(const EventLog& log, const Scenario& z, const std::filesystem::path& path);
/// FNV-1a 64 over the serialized CSV.
uint64_t event_log_hash(const EventLog& log, const Scenario& z);

}  // namespace policysim
