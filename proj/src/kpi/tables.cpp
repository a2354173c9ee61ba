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

#include "policysim/kpi/tables.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"
#include "policysim/sim/choice.hpp"

namespace policysim {

std::vector<double> SimTables::mean_link_times(const Network& net) const {
  std::vector<double> t(net.num_links());
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = i < link_time_count.size() && link_time_count[i] > 0 ? link_time_sum[i] / link_time_count[i]
                                                                : net.link(static_cast<int>(i)).free_flow_s();
  }
  return t;
}

namespace {

constexpr double kEps = 1e-9;

struct OpenLeg {
  LegRecord rec;
  std::optional<double> wait_start;
  std::optional<VehicleId> vehicle;
  double board_time = 0;
};

class Builder {
 public:
  Builder(const Scenario& z, SimTables& out) : z_(z), out_(out), open_(z.plans.size()) {}

  void index_traversals(const EventLog& log) {
    out_.link_time_sum.assign(z_.network.num_links(), 0.0);
    out_.link_time_count.assign(z_.network.num_links(), 0);
    for (const auto& e : log.events) {
      const auto* p = std::get_if<PathTraversalEvent>(&e);
      if (!p) continue;
      by_vehicle_[p->vehicle].push_back(out_.traversals.size());
      out_.traversals.push_back(TraversalRecord{p->vehicle, p->vehicle_type, p->enter_time, p->exit_time, p->distance_m,
                                                p->free_flow_s, p->fuel_joules, p->occupancy});
      if (p->vehicle.kind == VehicleKind::kBus) continue;
      double t = p->enter_time;
      for (std::size_t i = 0; i < p->links.size(); ++i) {
        out_.link_time_sum[p->links[i]] += p->link_exit_times[i] - t;
        out_.link_time_count[p->links[i]] += 1;
        t = p->link_exit_times[i];
      }
    }
  }

  void operator()(const DepartureEvent& e) {
    auto& slot = open_.at(e.agent);
    if (slot) fail("departure while a leg is open", e.agent);
    slot.emplace();
    slot->rec.agent = e.agent;
    slot->rec.leg = e.leg;
    slot->rec.planned = e.mode;
    slot->rec.mode = e.mode;
    slot->rec.depart = e.time;
  }
  void operator()(const WaitingAtStopEvent& e) { leg(e.agent).wait_start = e.time; }
  void operator()(const PersonEntersVehicleEvent& e) {
    auto& l = leg(e.agent);
    if (l.vehicle) fail("entered a vehicle while inside another", e.agent);
    if (l.wait_start) {
      l.rec.wait_s += e.time - *l.wait_start;
      l.wait_start.reset();
    } else if (e.vehicle.kind == VehicleKind::kRideHail) {
      l.rec.wait_s += e.time - l.rec.depart;
    }
    l.vehicle = e.vehicle;
    l.board_time = e.time;
  }
  void operator()(const PersonLeavesVehicleEvent& e) {
    auto& l = leg(e.agent);
    if (!l.vehicle || !(*l.vehicle == e.vehicle)) fail("left a vehicle it was not in", e.agent);
    close_vehicle(l, e.time);
  }
  void operator()(const PersonCostEvent& e) {
    auto& l = leg(e.agent);
    l.rec.gross_usd += e.gross_usd;
    l.rec.incentive_usd += e.incentive_usd;
    l.rec.net_usd += e.net_usd;
  }
  void operator()(const ReplannedEvent& e) {
    auto& l = leg(e.agent);
    l.rec.fallback = true;
    l.wait_start.reset();
  }
  void operator()(const ArrivalEvent& e) {
    auto& l = leg(e.agent);
    if (l.vehicle) close_vehicle(l, e.time);
    l.rec.arrive = e.time;
    l.rec.mode = e.mode;
    l.rec.distance_m = e.distance_m;
    l.rec.truncated = e.truncated;
    const auto& rec = l.rec;
    const auto& acts = z_.plans[e.agent].activities;
    out_.trips.push_back(TripRecord{rec.agent, rec.leg, acts.at(rec.leg + 1).type, rec.duration_s(), rec.net_usd,
                                    rec.delay_s, rec.congestible});
    out_.legs.push_back(rec);
    open_[e.agent].reset();
  }
  template <typename E>
  void operator()(const E&) {}

  void finish() {
    for (std::size_t a = 0; a < open_.size(); ++a) {
      if (open_[a]) fail("departure without arrival", static_cast<int>(a));
    }
  }

 private:
  OpenLeg& leg(int agent) {
    auto& slot = open_.at(agent);
    if (!slot) fail("event outside a leg", agent);
    return *slot;
  }

  [[noreturn]] void fail(const std::string& what, int agent) const {
    throw RuntimeError("malformed event log: " + what + " (person " + std::to_string(z_.agent_person(agent).id) + ")");
  }

  void close_vehicle(OpenLeg& l, double leave) {
    const auto v = *l.vehicle;
    l.vehicle.reset();
    l.rec.in_vehicle_s += leave - l.board_time;
    l.rec.congestible = true;
    auto it = by_vehicle_.find(v);
    if (it == by_vehicle_.end()) return;
    for (std::size_t idx : it->second) {
      const auto& t = out_.traversals[idx];
      if (t.enter < l.board_time - kEps || t.exit > leave + kEps) continue;
      l.rec.delay_s += t.realized_s() - t.free_flow_s;
      if (v.kind == VehicleKind::kBus) {
        const auto& vt = z_.vehicle_types[t.vehicle_type];
        const double load = static_cast<double>(t.occupancy) / vt.seats;
        std::size_t band = 0;
        const auto& edges = z_.config.crowding_band_edges;
        while (band < edges.size() && load > edges[band]) ++band;
        l.rec.band_hours[std::min<std::size_t>(band, kCrowdingBands - 1)] += t.realized_s() / 3600.0;
        if (t.occupancy > vt.seats) l.rec.above_seats_hours += t.realized_s() / 3600.0;
      }
    }
  }

  const Scenario& z_;
  SimTables& out_;
  std::vector<std::optional<OpenLeg>> open_;
  std::map<VehicleId, std::vector<std::size_t>> by_vehicle_;
};

}  // namespace

SimTables build_tables(const EventLog& log, const Scenario& z) {
  SimTables out;
  Builder b(z, out);
  b.index_traversals(log);
  for (const auto& e : log.events) std::visit(b, e);
  b.finish();
  return out;
}

void write_tables(const SimTables& t, const Scenario& z, const std::filesystem::path& dir) {
  {
    CsvWriter w(dir / "trips.csv");
    w.row({"person_id", "trip", "purpose", "duration_s", "expenditure_usd", "delay_s", "congestible"});
    for (const auto& r : t.trips) {
      w.row({std::to_string(z.agent_person(r.agent).id), std::to_string(r.trip), activity_name(r.purpose),
             format_double(r.duration_s), format_double(r.expenditure_usd), format_double(r.delay_s),
             r.congestible ? "1" : "0"});
    }
  }
  {
    CsvWriter w(dir / "legs.csv");
    w.row({"person_id", "leg", "planned_mode", "mode", "depart", "arrive", "distance_m", "gross_usd", "incentive_usd",
           "net_usd", "wait_s", "in_vehicle_s", "band1_h", "band2_h", "band3_h", "above_seats_h", "delay_s",
           "truncated", "fallback"});
    for (const auto& r : t.legs) {
      w.row({std::to_string(z.agent_person(r.agent).id), std::to_string(r.leg), trip_mode_name(r.planned),
             trip_mode_name(r.mode), format_double(r.depart), format_double(r.arrive), format_double(r.distance_m),
             format_double(r.gross_usd), format_double(r.incentive_usd), format_double(r.net_usd),
             format_double(r.wait_s), format_double(r.in_vehicle_s), format_double(r.band_hours[0]),
             format_double(r.band_hours[1]), format_double(r.band_hours[2]), format_double(r.above_seats_hours),
             format_double(r.delay_s), r.truncated ? "1" : "0", r.fallback ? "1" : "0"});
    }
  }
  {
    CsvWriter w(dir / "traversals.csv");
    w.row({"vehicle", "vehicle_type", "mode", "enter", "exit", "distance_m", "realized_s", "free_flow_s", "fuel_j",
           "occupancy"});
    for (const auto& r : t.traversals) {
      w.row({vehicle_label(r.vehicle, z), vehicle_type_label(r.vehicle_type, z), vehicle_kind_mode(r.vehicle.kind),
             format_double(r.enter), format_double(r.exit), format_double(r.distance_m), format_double(r.realized_s()),
             format_double(r.free_flow_s), format_double(r.fuel_joules), std::to_string(r.occupancy)});
    }
  }
}

}  // namespace policysim
