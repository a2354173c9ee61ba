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

#include "policysim/sim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"
#include "policysim/sim/choice.hpp"
#include "policysim/sim/convergence.hpp"
#include "policysim/sim/link_queue.hpp"
#include "policysim/sim/ridehail.hpp"
#include "policysim/sim/skims.hpp"
#include "policysim/sim/timetable.hpp"
#include "policysim/sim/transit.hpp"
#include "policysim/udi/rules.hpp"

namespace policysim {

std::size_t PlanMemory::insert(const std::vector<TripMode>& modes) {
  for (std::size_t i = 0; i < plans_.size(); ++i) {
    if (plans_[i].modes == modes) return i;
  }
  plans_.push_back(PlanVariant{modes, 0, false});
  std::size_t added = plans_.size() - 1;
  if (plans_.size() > static_cast<std::size_t>(capacity_)) {
    std::size_t worst = plans_.size();
    for (std::size_t i = 0; i < added; ++i) {
      if (worst == plans_.size() || plans_[i].score < plans_[worst].score) worst = i;
    }
    plans_.erase(plans_.begin() + static_cast<std::ptrdiff_t>(worst));
    added = plans_.size() - 1;
  }
  return added;
}

void PlanMemory::set_score(std::size_t i, double score) {
  plans_[i].score = score;
  plans_[i].scored = true;
}

std::size_t PlanMemory::select(Rng& rng, double temperature) const {
  std::vector<double> u;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < plans_.size(); ++i) {
    if (!plans_[i].scored) continue;
    u.push_back(plans_[i].score / temperature);
    idx.push_back(i);
  }
  if (idx.empty()) return 0;
  return idx[mode_choice(u, rng)];
}

namespace {

constexpr double kBinSeconds = 900.0;
constexpr int kBins = 96;

enum Kind : uint8_t {
  kWalkArrive = 0,
  kStopArrival = 1,
  kBusArrival = 2,
  kWaitTimeout = 3,
  kDriveStep = 4,
  kActivityEnd = 5,
};

struct QueuedEvent {
  double time;
  uint8_t kind;
  uint64_t seq;
  int a, b, c;

  bool operator>(const QueuedEvent& o) const {
    if (time != o.time) return time > o.time;
    if (kind != o.kind) return kind > o.kind;
    return seq > o.seq;
  }
};

enum class Phase : uint8_t { kIdle, kWalking, kDriving, kRideHail, kWaiting, kOnBus, kDone };
enum class Purpose : uint8_t { kCarTrip, kPickup, kDropoff };

struct Drive {
  VehicleId vehicle;
  int vehicle_type;
  double joules_per_meter;
  int agent;
  Purpose purpose;
  std::vector<int> links;
  std::vector<double> exits;
  double enter_time = 0;
  std::size_t next = 0;
  int occupancy = 0;
  bool done = false;
};

struct Runner {
  std::size_t variant = 0;
  int leg = 0;
  Phase phase = Phase::kIdle;
  TripMode planned = TripMode::kWalk;
  TripMode executing = TripMode::kWalk;
  double depart = 0;
  double distance = 0;
  double net_cost = 0;
  double crowd_extra_s = 0;
  double utility = 0;
  int legs_done = 0;
  int token = 0;
  TransitItinerary itin;
  int drive = -1;
  int rh_vehicle = -1;
  double request_time = 0;
};

struct BusState {
  int occupancy = 0;
  int segment_occupancy = 0;
  std::vector<int> riders;
};

int bin_of(double t) { return std::clamp(static_cast<int>(t / kBinSeconds), 0, kBins - 1); }

class Engine {
 public:
  Engine(const DecisionVector& d, const Scenario& z, uint64_t seed)
      : z_(z),
        d_(d),
        c_(z.config),
        seed_(seed),
        net_(z.network),
        tt_(build_timetables(z, d)),
        walk_m_(all_pairs_parallel(net_, kWalkBit, length_costs(net_))),
        car_ff_(all_pairs_parallel(net_, kCarBit, free_flow_costs(net_))),
        router_(z, tt_, walk_m_),
        queues_(net_) {
    const auto n_agents = z.plans.size();
    const int n_nodes = static_cast<int>(net_.num_nodes());
    const int n_links = static_cast<int>(net_.num_links());
    ff_ = free_flow_costs(net_);
    expected_.resize(static_cast<std::size_t>(kBins) * n_links);
    for (int b = 0; b < kBins; ++b) std::copy(ff_.begin(), ff_.end(), expected_.begin() + b * n_links);
    stat_sum_.assign(expected_.size(), 0.0);
    stat_cnt_.assign(expected_.size(), 0);
    trees_.resize(static_cast<std::size_t>(kBins) * n_nodes);
    tree_stamp_.assign(trees_.size(), -1);
    memory_.assign(n_agents, PlanMemory(c_.plan_memory_size));
    runners_.resize(n_agents);
    rh_expected_wait_ = c_.ridehail_expected_wait_s;
    route_crowding_.assign(tt_.size(), 1.0);
    ages_.resize(n_agents);
    incomes_.resize(n_agents);
    for (std::size_t a = 0; a < n_agents; ++a) {
      ages_[a] = z.agent_person(static_cast<int>(a)).age;
      incomes_[a] = z.agent_household(static_cast<int>(a)).income_usd;
    }
    const int fleet = z.ridehail_fleet_size();
    for (int v = 0; v < fleet; ++v) {
      const auto agent = static_cast<std::size_t>(v) * n_agents / fleet;
      rh_home_.push_back(z.plans[agent].activities.front().node);
    }
    waiting_.resize(tt_.size());
    buses_.resize(tt_.size());
    seg_cum_m_.resize(tt_.size());
    for (std::size_t t = 0; t < tt_.size(); ++t) {
      waiting_[t].resize(tt_[t].num_stops());
      buses_[t].resize(tt_[t].num_trips());
      auto& cum = seg_cum_m_[t];
      cum.push_back(0);
      for (double len : tt_[t].segment_length_m) cum.push_back(cum.back() + len);
    }
  }

  SimOutputs run(int max_iterations) {
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    SimOutputs out;
    std::vector<double> scores;
    for (int it = 0; it < max_iterations; ++it) {
      const bool last = it + 1 == max_iterations;
      record_ = last || c_.stop_at_convergence;
      log_.events.clear();
      Rng rng(mix_seed(seed_, static_cast<uint64_t>(it)));
      replan(rng);
      execute_day();
      auto summary = finish_iteration(it);
      scores.push_back(summary.mean_score);
      out.iterations.push_back(summary);
      out.iterations_run = it + 1;
      out.converged = check_convergence(scores, c_.convergence_window, c_.convergence_tol);
      if (c_.stop_at_convergence && out.converged) break;
    }
    out.events = std::move(log_);
    return out;
  }

 private:
  // ---- expectations -------------------------------------------------------------------

  const ShortestPathTree& tree_for(int bin, int origin) {
    const auto key = static_cast<std::size_t>(bin) * net_.num_nodes() + origin;
    if (tree_stamp_[key] != stamp_) {
      const auto n_links = net_.num_links();
      trees_[key] = dijkstra(net_, origin, kCarBit, std::span<const double>(expected_.data() + bin * n_links, n_links));
      tree_stamp_[key] = stamp_;
    }
    return trees_[key];
  }

  std::vector<int> car_path(double t, int o, int d) { return extract_path(net_, tree_for(bin_of(t), o), d); }

  double path_length(const std::vector<int>& links) const {
    double m = 0;
    for (int li : links) m += net_.link(li).length_m;
    return m;
  }

  double fare(int tt, int agent) const {
    const auto f = d_.fare_for(tt_[tt].route_id, ages_[agent]);
    return f ? *f : c_.transit_default_fare_usd;
  }

  double ridehail_price(double meters, double seconds) const {
    return c_.ridehail_base_usd + c_.ridehail_per_mile_usd * meters / kMetersPerMile +
           c_.ridehail_per_minute_usd * seconds / 60.0;
  }

  void replan(Rng& rng) {
    const auto& plans = z_.plans;
    for (std::size_t a = 0; a < plans.size(); ++a) {
      const auto& acts = plans[a].activities;
      const std::size_t legs = plans[a].trip_count();
      auto& mem = memory_[a];
      if (legs == 0) continue;
      if (mem.empty() || uniform01(rng) < c_.replanning_fraction) {
        std::vector<TripMode> modes(legs);
        for (std::size_t i = 0; i < legs; ++i) {
          modes[i] = choose_leg_mode(static_cast<int>(a), acts[i].node, acts[i + 1].node, acts[i].end_time_s, rng);
        }
        runners_[a].variant = mem.insert(modes);
      } else {
        runners_[a].variant = mem.select(rng, c_.plan_selection_temperature);
      }
    }
  }

  TripMode choose_leg_mode(int agent, int o, int d, double t, Rng& rng) {
    opts_.clear();
    const int age = ages_[agent];
    const double income = incomes_[agent];
    const double walk_m = walk_m_.at(o, d);
    opts_.push_back(LegOption{TripMode::kWalk, walk_m / c_.walk_speed_mps, 0, 1.0, 0});
    if (o != d) {
      const auto& tree = tree_for(bin_of(t), o);
      const double car_s = tree.dist[d];
      if (std::isfinite(car_s)) {
        const double car_m = path_length(extract_path(net_, tree, d));
        if (age >= 16) {
          opts_.push_back(
              LegOption{TripMode::kCar, car_s, 0, 1.0, c_.car_operating_cost_usd_per_mile * car_m / kMetersPerMile});
        }
        if (!rh_home_.empty()) {
          opts_.push_back(
              LegOption{TripMode::kRideHail, rh_expected_wait_ + car_s, 0, 1.0, ridehail_price(car_m, car_s)});
        }
      }
      if (const auto itin = router_.earliest_arrival(o, d, t)) {
        opts_.push_back(LegOption{TripMode::kWalkTransit, itin->arrival - t, itin->in_vehicle_s(),
                                  route_crowding_[itin->candidate.timetable], fare(itin->candidate.timetable, agent)});
      }
    }
    utils_.clear();
    for (const auto& opt : opts_) utils_.push_back(leg_utility(opt, age, income, d_, c_));
    return opts_[mode_choice(utils_, rng)].mode;
  }

  // ---- within-day execution --------------------------------------------------------------

  void push(double t, Kind k, int a, int b = 0, int c = 0) { queue_.push(QueuedEvent{t, k, seq_++, a, b, c}); }

  template <typename E>
  void emit(E&& e) {
    if (record_) log_.events.emplace_back(std::forward<E>(e));
  }

  void execute_day() {
    queue_ = {};
    seq_ = 0;
    queues_.reset();
    drives_.clear();
    std::fill(stat_sum_.begin(), stat_sum_.end(), 0.0);
    std::fill(stat_cnt_.begin(), stat_cnt_.end(), 0);
    fleet_.location = rh_home_;
    fleet_.idle.assign(rh_home_.size(), 1);
    rh_wait_sum_ = 0;
    rh_wait_count_ = 0;
    denied_ = 0;
    fallbacks_ = 0;
    mode_legs_.fill(0);
    crowd_weighted_.assign(tt_.size(), 0.0);
    crowd_hours_.assign(tt_.size(), 0.0);
    for (std::size_t t = 0; t < tt_.size(); ++t) {
      for (auto& w : waiting_[t]) w.clear();
      for (auto& b : buses_[t]) b = BusState{};
      for (std::size_t trip = 0; trip < tt_[t].num_trips(); ++trip) {
        if (tt_[t].departures[trip] <= kDayEnd) push(tt_[t].departures[trip], kBusArrival, int(t), int(trip), 0);
      }
    }
    for (std::size_t a = 0; a < runners_.size(); ++a) {
      auto& r = runners_[a];
      r.leg = 0;
      r.phase = Phase::kIdle;
      r.utility = 0;
      r.legs_done = 0;
      const auto& acts = z_.plans[a].activities;
      if (acts.size() >= 2) push(std::max(0.0, acts[0].end_time_s), kActivityEnd, int(a));
    }
    now_ = 0;
    while (!queue_.empty()) {
      const auto e = queue_.top();
      if (e.time > kDayEnd) break;
      queue_.pop();
      now_ = e.time;
      switch (e.kind) {
        case kActivityEnd:
          start_leg(e.a);
          break;
        case kWalkArrive:
          finish_leg(e.a, false);
          break;
        case kStopArrival:
          stop_arrival(e.a);
          break;
        case kBusArrival:
          bus_arrival(e.a, e.b, e.c);
          break;
        case kWaitTimeout:
          wait_timeout(e.a, e.b);
          break;
        case kDriveStep:
          drive_step(e.a);
          break;
      }
    }
    force_complete();
  }

  void start_leg(int agent) {
    auto& r = runners_[agent];
    const auto& acts = z_.plans[agent].activities;
    const auto& from = acts[r.leg];
    const auto& to = acts[r.leg + 1];
    emit(ActivityEndEvent{now_, agent, from.type, from.node});
    r.planned = memory_[agent][r.variant].modes[r.leg];
    r.executing = r.planned;
    r.depart = now_;
    r.distance = 0;
    r.net_cost = 0;
    r.crowd_extra_s = 0;
    ++mode_legs_[static_cast<int>(r.planned)];
    emit(DepartureEvent{now_, agent, r.leg, r.planned});
    const int o = from.node, d = to.node;
    switch (r.planned) {
      case TripMode::kWalk:
        start_walk(agent, o, d);
        break;
      case TripMode::kCar: {
        auto path = car_path(now_, o, d);
        const VehicleId car{VehicleKind::kCar, agent, 0};
        emit(PersonEntersVehicleEvent{now_, agent, car});
        r.distance += path_length(path);
        r.phase = Phase::kDriving;
        start_drive(car, kCarVehicleType, c_.car_joules_per_meter, agent, Purpose::kCarTrip, std::move(path), 1);
        break;
      }
      case TripMode::kRideHail: {
        const auto job = dispatch_ridehail(fleet_, o, car_ff_, c_.ridehail_max_pickup_wait_s);
        if (!job) {
          fallback(agent, ReplanReason::kNoRideHail, o, d);
          break;
        }
        fleet_.idle[job->vehicle] = 0;
        r.rh_vehicle = job->vehicle;
        r.request_time = now_;
        r.phase = Phase::kRideHail;
        start_drive(VehicleId{VehicleKind::kRideHail, job->vehicle, 0}, kRideHailVehicleType, c_.car_joules_per_meter,
                    agent, Purpose::kPickup, car_ff_.path(net_, fleet_.location[job->vehicle], o), 0);
        break;
      }
      case TripMode::kWalkTransit: {
        const auto itin = router_.earliest_arrival(o, d, now_);
        if (!itin) {
          fallback(agent, ReplanReason::kNoTransit, o, d);
          break;
        }
        r.itin = *itin;
        r.distance += itin->candidate.access_m;
        r.phase = Phase::kWalking;
        push(itin->at_stop, kStopArrival, agent);
        break;
      }
    }
  }

  void fallback(int agent, ReplanReason why, int from_node, int to_node) {
    auto& r = runners_[agent];
    emit(ReplannedEvent{now_, agent, r.leg, r.executing, TripMode::kWalk, why});
    r.executing = TripMode::kWalk;
    ++fallbacks_;
    start_walk(agent, from_node, to_node);
  }

  void start_walk(int agent, int from, int to) {
    auto& r = runners_[agent];
    const double m = walk_m_.at(from, to);
    r.distance += m;
    r.phase = Phase::kWalking;
    push(now_ + m / c_.walk_speed_mps, kWalkArrive, agent);
  }

  void finish_leg(int agent, bool truncated) {
    auto& r = runners_[agent];
    const auto& acts = z_.plans[agent].activities;
    emit(ArrivalEvent{now_, agent, r.leg, r.executing, r.distance, truncated});
    const double hours = (now_ - r.depart + r.crowd_extra_s) / 3600.0;
    r.utility -= c_.beta_time_per_hour * hours + c_.beta_cost_per_usd * r.net_cost + c_.asc(r.planned);
    ++r.legs_done;
    ++r.leg;
    const auto& act = acts[r.leg];
    emit(ActivityStartEvent{now_, agent, act.type, act.node});
    if (static_cast<std::size_t>(r.leg) + 1 >= acts.size()) {
      r.phase = Phase::kDone;
      return;
    }
    r.phase = Phase::kIdle;
    if (!truncated) push(std::max(now_, act.end_time_s), kActivityEnd, agent);
  }

  void charge(int agent, TripMode mode, double gross) {
    auto& r = runners_[agent];
    const double incentive = incentive_for_trip(mode, ages_[agent], incomes_[agent], d_);
    const double net = net_cost(gross, incentive, c_.incentive_floor);
    r.net_cost += net;
    emit(PersonCostEvent{now_, agent, r.leg, mode, gross, gross - net, net});
  }

  // ---- vehicles on the road --------------------------------------------------------------

  void start_drive(VehicleId v, int vtype, double jpm, int agent, Purpose purpose, std::vector<int> links,
                   int occupancy) {
    const int id = static_cast<int>(drives_.size());
    drives_.push_back(Drive{v, vtype, jpm, agent, purpose, std::move(links), {}, now_, 0, occupancy, false});
    runners_[agent].drive = id;
    drive_step(id);
  }

  void drive_step(int id) {
    auto& dr = drives_[id];
    if (dr.next < dr.links.size()) {
      const int li = dr.links[dr.next];
      const double exit = queues_.enter(li, now_);
      const auto key = static_cast<std::size_t>(bin_of(now_)) * net_.num_links() + li;
      stat_sum_[key] += exit - now_;
      stat_cnt_[key] += 1;
      dr.exits.push_back(exit);
      ++dr.next;
      push(exit, kDriveStep, id);
      return;
    }
    complete_drive(id);
  }

  void emit_traversal(const Drive& dr, std::size_t n_links) {
    if (n_links == 0 || !record_) return;
    PathTraversalEvent e;
    e.vehicle = dr.vehicle;
    e.vehicle_type = dr.vehicle_type;
    e.links.assign(dr.links.begin(), dr.links.begin() + static_cast<std::ptrdiff_t>(n_links));
    e.link_exit_times.assign(dr.exits.begin(), dr.exits.begin() + static_cast<std::ptrdiff_t>(n_links));
    e.enter_time = dr.enter_time;
    e.exit_time = e.link_exit_times.back();
    e.time = e.exit_time;
    e.occupancy = dr.occupancy;
    e.distance_m = 0;
    e.free_flow_s = 0;
    for (int li : e.links) {
      e.distance_m += net_.link(li).length_m;
      e.free_flow_s += ff_[li];
    }
    e.fuel_joules = e.distance_m * dr.joules_per_meter;
    log_.events.emplace_back(std::move(e));
  }

  void complete_drive(int id) {
    drives_[id].done = true;
    const Drive& dr = drives_[id];
    emit_traversal(dr, dr.links.size());
    const int agent = dr.agent;
    auto& r = runners_[agent];
    const auto& acts = z_.plans[agent].activities;
    switch (dr.purpose) {
      case Purpose::kCarTrip:
        emit(PersonLeavesVehicleEvent{now_, agent, dr.vehicle});
        charge(agent, TripMode::kCar, c_.car_operating_cost_usd_per_mile * r.distance / kMetersPerMile);
        finish_leg(agent, false);
        break;
      case Purpose::kPickup: {
        const VehicleId vid = dr.vehicle;
        const int v = vid.index;
        const int o = acts[r.leg].node;
        fleet_.location[v] = o;
        rh_wait_sum_ += now_ - r.request_time;
        ++rh_wait_count_;
        emit(PersonEntersVehicleEvent{now_, agent, vid});
        r.request_time = now_;  // reused as pickup time
        auto path = car_path(now_, o, acts[r.leg + 1].node);
        r.distance += path_length(path);
        start_drive(vid, kRideHailVehicleType, c_.car_joules_per_meter, agent, Purpose::kDropoff, std::move(path), 1);
        break;
      }
      case Purpose::kDropoff: {
        const int v = dr.vehicle.index;
        fleet_.location[v] = acts[r.leg + 1].node;
        fleet_.idle[v] = 1;
        emit(PersonLeavesVehicleEvent{now_, agent, dr.vehicle});
        charge(agent, TripMode::kRideHail, ridehail_price(path_length(dr.links), now_ - r.request_time));
        finish_leg(agent, false);
        break;
      }
    }
  }

  // ---- transit ---------------------------------------------------------------------------

  void stop_arrival(int agent) {
    auto& r = runners_[agent];
    const auto& c = r.itin.candidate;
    const auto& tt = tt_[c.timetable];
    const int node = z_.routes[tt.route].stops[c.board].node;
    emit(WaitingAtStopEvent{now_, agent, tt.route_id, node});
    waiting_[c.timetable][c.board].push_back(agent);
    r.phase = Phase::kWaiting;
    ++r.token;
    push(now_ + c_.transit_max_wait_s, kWaitTimeout, agent, r.token);
  }

  void wait_timeout(int agent, int token) {
    auto& r = runners_[agent];
    if (r.phase != Phase::kWaiting || r.token != token) return;
    const auto& c = r.itin.candidate;
    auto& list = waiting_[c.timetable][c.board];
    list.erase(std::find(list.begin(), list.end(), agent));
    const auto& tt = tt_[c.timetable];
    const int stop_node = z_.routes[tt.route].stops[c.board].node;
    fallback(agent, ReplanReason::kMaxWait, stop_node, z_.plans[agent].activities[r.leg + 1].node);
  }

  void bus_arrival(int t, int trip, int j) {
    const auto& tt = tt_[t];
    const auto& route = z_.routes[tt.route];
    const auto& vtype = z_.vehicle_types[tt.vehicle_type];
    auto& bus = buses_[t][trip];
    const VehicleId vid{VehicleKind::kBus, trip, tt.route_id};

    if (j > 0) {
      const double enter = tt.arrival(trip, j - 1);
      const double seg = now_ - enter;
      const double mult = crowding_multiplier(static_cast<double>(bus.segment_occupancy) / vtype.seats, c_);
      for (int rider : bus.riders) runners_[rider].crowd_extra_s += seg * (mult - 1.0);
      crowd_weighted_[t] += seg * mult * bus.segment_occupancy;
      crowd_hours_[t] += seg * bus.segment_occupancy;
      if (record_ && !tt.segment_links[j - 1].empty()) {
        PathTraversalEvent e;
        e.time = now_;
        e.vehicle = vid;
        e.vehicle_type = tt.vehicle_type;
        e.links = tt.segment_links[j - 1];
        double exit = enter + tt.dwell[j - 1];
        for (int li : e.links) {
          exit += ff_[li];
          e.link_exit_times.push_back(exit);
        }
        e.link_exit_times.back() = now_;
        e.enter_time = enter;
        e.exit_time = now_;
        e.occupancy = bus.segment_occupancy;
        e.distance_m = tt.segment_length_m[j - 1];
        e.fuel_joules = e.distance_m * vtype.joules_per_meter;
        e.free_flow_s = seg;
        log_.events.emplace_back(std::move(e));
      }
    }

    // Alight first, then board in order of arrival at the stop.
    auto& riders = bus.riders;
    for (std::size_t i = 0; i < riders.size();) {
      const int agent = riders[i];
      auto& r = runners_[agent];
      if (r.itin.candidate.alight != j) {
        ++i;
        continue;
      }
      riders.erase(riders.begin() + static_cast<std::ptrdiff_t>(i));
      --bus.occupancy;
      emit(PersonLeavesVehicleEvent{now_, agent, vid});
      const auto& cum = seg_cum_m_[t];
      r.distance += cum[j] - cum[r.itin.candidate.board];
      start_walk(agent, route.stops[j].node, z_.plans[agent].activities[r.leg + 1].node);
    }
    if (static_cast<std::size_t>(j) + 1 < tt.num_stops()) {
      auto& queue = waiting_[t][j];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        const int agent = queue[i];
        if (transit_board(bus.occupancy, vtype) == BoardOutcome::kBoarded) {
          auto& r = runners_[agent];
          r.phase = Phase::kOnBus;
          ++r.token;
          riders.push_back(agent);
          emit(PersonEntersVehicleEvent{now_, agent, vid});
          charge(agent, TripMode::kWalkTransit, fare(t, agent));
        } else {
          ++denied_;
          emit(BoardingDeniedEvent{now_, agent, vid, route.stops[j].node});
          queue[keep++] = agent;
        }
      }
      queue.resize(keep);
      if (bus.occupancy > vtype.capacity()) throw RuntimeError("bus occupancy exceeds capacity");
      bus.segment_occupancy = bus.occupancy;
      const double next = tt.arrival(trip, j + 1);
      if (next <= kDayEnd) push(next, kBusArrival, t, trip, j + 1);
    }
  }

  // ---- horizon ---------------------------------------------------------------------------

  void force_complete() {
    for (std::size_t id = 0; id < drives_.size(); ++id) {
      const auto& dr = drives_[id];
      if (!dr.done) emit_traversal(dr, dr.exits.size());
    }
    const double horizon_time = now_;
    for (std::size_t a = 0; a < runners_.size(); ++a) {
      auto& r = runners_[a];
      if (r.phase == Phase::kIdle || r.phase == Phase::kDone) continue;
      const auto& acts = z_.plans[a].activities;
      const int o = acts[r.leg].node, d = acts[r.leg + 1].node;
      const double ff = r.executing == TripMode::kWalk || r.executing == TripMode::kWalkTransit
                            ? walk_m_.at(o, d) / c_.walk_speed_mps
                            : car_ff_.at(o, d);
      now_ = std::max(horizon_time, r.depart + ff);
      finish_leg(static_cast<int>(a), true);
    }
    now_ = horizon_time;
  }

  // ---- scoring and learning ---------------------------------------------------------------

  IterationSummary finish_iteration(int it) {
    IterationSummary s;
    s.iteration = it;
    double total = 0;
    int counted = 0;
    for (std::size_t a = 0; a < runners_.size(); ++a) {
      if (z_.plans[a].trip_count() == 0) continue;
      memory_[a].set_score(runners_[a].variant, runners_[a].utility);
      total += runners_[a].utility;
      ++counted;
    }
    s.mean_score = counted ? total / counted : 0.0;
    s.mode_legs = mode_legs_;
    s.denied_boardings = denied_;
    s.fallbacks = fallbacks_;
    s.mean_ridehail_wait_s = rh_wait_count_ ? rh_wait_sum_ / rh_wait_count_ : 0.0;

    const auto n_links = net_.num_links();
    for (std::size_t k = 0; k < expected_.size(); ++k) {
      expected_[k] = stat_cnt_[k] ? stat_sum_[k] / stat_cnt_[k] : ff_[k % n_links];
    }
    ++stamp_;
    if (rh_wait_count_) rh_expected_wait_ = s.mean_ridehail_wait_s;
    for (std::size_t t = 0; t < tt_.size(); ++t) {
      route_crowding_[t] = crowd_hours_[t] > 0 ? crowd_weighted_[t] / crowd_hours_[t] : 1.0;
    }
    return s;
  }

  const Scenario& z_;
  const DecisionVector& d_;
  const GlobalConfig& c_;
  uint64_t seed_;
  const Network& net_;
  std::vector<Timetable> tt_;
  Skims walk_m_;
  Skims car_ff_;
  TransitRouter router_;
  LinkQueues queues_;
  std::vector<double> ff_;

  std::vector<double> expected_;
  std::vector<double> stat_sum_;
  std::vector<int> stat_cnt_;
  std::vector<ShortestPathTree> trees_;
  std::vector<int> tree_stamp_;
  int stamp_ = 0;
  double rh_expected_wait_ = 0;
  std::vector<double> route_crowding_;
  std::vector<double> crowd_weighted_, crowd_hours_;

  std::vector<PlanMemory> memory_;
  std::vector<Runner> runners_;
  std::vector<int> ages_;
  std::vector<double> incomes_;
  std::vector<int> rh_home_;
  RideHailFleet fleet_;
  std::vector<std::vector<std::vector<int>>> waiting_;
  std::vector<std::vector<BusState>> buses_;
  std::vector<std::vector<double>> seg_cum_m_;
  std::vector<Drive> drives_;

  std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, std::greater<>> queue_;
  uint64_t seq_ = 0;
  double now_ = 0;
  bool record_ = false;
  EventLog log_;

  double rh_wait_sum_ = 0;
  int rh_wait_count_ = 0;
  int denied_ = 0;
  int fallbacks_ = 0;
  std::array<int, kNumTripModes> mode_legs_{};

  std::vector<LegOption> opts_;
  std::vector<double> utils_;
};

}  // namespace

SimOutputs run_simulation(const DecisionVector& d, const Scenario& z, uint64_t seed, int max_iterations) {
  const auto violations = validate(d, z);
  if (!violations.empty()) {
    throw InfeasibleError("decision vector violates " + std::to_string(violations.size()) +
                          " business rule(s); first: " + describe(violations.front()));
  }
  Engine engine(d, z, seed);
  return engine.run(max_iterations);
}

void write_iterations_csv(const std::vector<IterationSummary>& its, const std::filesystem::path& path) {
  CsvWriter w(path);
  w.row({"iteration", "mean_score", "walk_legs", "car_legs", "walk_transit_legs", "ride_hail_legs", "denied_boardings",
         "fallbacks", "mean_ridehail_wait_s"});
  for (const auto& s : its) {
    w.row({std::to_string(s.iteration), format_double(s.mean_score), std::to_string(s.mode_legs[0]),
           std::to_string(s.mode_legs[1]), std::to_string(s.mode_legs[2]), std::to_string(s.mode_legs[3]),
           std::to_string(s.denied_boardings), std::to_string(s.fallbacks), format_double(s.mean_ridehail_wait_s)});
  }
}

}  // namespace policysim
