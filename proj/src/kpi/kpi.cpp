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

#include "policysim/kpi/kpi.hpp"

#include <map>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"
#include "policysim/kpi/accessibility.hpp"
#include "policysim/sim/choice.hpp"
#include "policysim/sim/events.hpp"

namespace policysim {

namespace {

struct KpiInfo {
  const char* name;
  const char* units;
};

constexpr std::array<KpiInfo, kNumKpis> kInfo{{
    {"work_accessibility", "locations"},
    {"secondary_accessibility", "locations"},
    {"car_work_accessibility", "locations"},
    {"car_secondary_accessibility", "locations"},
    {"transit_work_accessibility", "locations"},
    {"transit_secondary_accessibility", "locations"},
    {"expenditure_work", "usd_per_trip"},
    {"expenditure_secondary", "usd_per_trip"},
    {"cost_burden_work", "ratio"},
    {"cost_burden_secondary", "ratio"},
    {"bus_crowding", "hours_per_leg"},
    {"bus_crowding_legacy", "hours"},
    {"vmt", "miles"},
    {"total_delay", "seconds"},
    {"avg_delay_per_trip", "seconds"},
    {"financial_sustainability", "usd"},
    {"transit_net_cost", "usd"},
    {"pm25", "grams"},
    {"ghg", "grams"},
    {"person_trips", "trips"},
}};

double lookup(const std::map<std::string, double>& m, const std::string& key, const char* what) {
  auto it = m.find(key);
  if (it == m.end()) throw RuntimeError(std::string("missing ") + what + " for '" + key + "'");
  return it->second;
}

std::string fuel_of(int vehicle_type, const Scenario& z) {
  return vehicle_type >= 0 ? z.vehicle_types[vehicle_type].fuel_type : z.config.car_fuel_type;
}

}  // namespace

const char* kpi_name(Kpi k) { return kInfo[static_cast<int>(k)].name; }
const char* kpi_units(Kpi k) { return kInfo[static_cast<int>(k)].units; }

std::optional<Kpi> parse_kpi(std::string_view name) {
  for (int i = 0; i < kNumKpis; ++i) {
    if (name == kInfo[i].name) return static_cast<Kpi>(i);
  }
  return std::nullopt;
}

double cost_burden(const SimTables& t, const Scenario& z, ActivityType purpose) {
  const double vot = z.config.value_of_time_usd_per_hour;
  double sum = 0;
  int n = 0;
  for (const auto& trip : t.trips) {
    if (trip.purpose != purpose) continue;
    const double income = z.agent_household(trip.agent).income_usd;
    sum += (trip.expenditure_usd + trip.duration_s / 3600.0 * vot) / income;
    ++n;
  }
  return n ? sum / n : 0.0;
}

double bus_crowding(const SimTables& t, const GlobalConfig& c) {
  double sum = 0;
  int n = 0;
  for (const auto& leg : t.legs) {
    if (leg.mode != TripMode::kWalkTransit) continue;
    for (int b = 0; b < kCrowdingBands; ++b) sum += leg.band_hours[b] * c.crowding_band_multipliers[b];
    ++n;
  }
  return n ? sum / n : 0.0;
}

FinancialParts financial_parts(const SimTables& t, const Scenario& z) {
  FinancialParts f;
  for (const auto& leg : t.legs) {
    if (leg.mode == TripMode::kWalkTransit) f.fares += leg.gross_usd;
    f.incentives += leg.incentive_usd;
  }
  for (const auto& tr : t.traversals) {
    if (tr.vehicle.kind != VehicleKind::kBus) continue;
    const auto& vt = z.vehicle_types[tr.vehicle_type];
    f.fuel_cost += tr.fuel_joules / 1e6 * lookup(z.config.fuel_price_usd_per_mj, vt.fuel_type, "fuel price");
    f.labour_cost += tr.realized_s() / 3600.0 * vt.cost_per_hour;
  }
  return f;
}

KpiVector compute_kpis(const SimTables& t, const DecisionVector& d, const Scenario& z) {
  const auto& c = z.config;
  KpiVector k;

  const auto link_times = t.mean_link_times(z.network);
  const auto m = build_accessibility_matrices(z, d, link_times);
  const double thr = c.accessibility_threshold_s;
  k[Kpi::kWorkAccessibility] = accessibility(z, m, ActivityType::kWork, AccessMode::kAll, thr);
  k[Kpi::kSecondaryAccessibility] = accessibility(z, m, ActivityType::kSecondary, AccessMode::kAll, thr);
  k[Kpi::kCarWorkAccessibility] = accessibility(z, m, ActivityType::kWork, AccessMode::kCar, thr);
  k[Kpi::kCarSecondaryAccessibility] = accessibility(z, m, ActivityType::kSecondary, AccessMode::kCar, thr);
  k[Kpi::kTransitWorkAccessibility] = accessibility(z, m, ActivityType::kWork, AccessMode::kTransit, thr);
  k[Kpi::kTransitSecondaryAccessibility] = accessibility(z, m, ActivityType::kSecondary, AccessMode::kTransit, thr);

  double exp_sum[2] = {0, 0};
  int exp_n[2] = {0, 0};
  double delay_sum = 0;
  int delay_n = 0;
  for (const auto& trip : t.trips) {
    if (trip.purpose == ActivityType::kWork || trip.purpose == ActivityType::kSecondary) {
      const int i = trip.purpose == ActivityType::kWork ? 0 : 1;
      exp_sum[i] += trip.expenditure_usd;
      ++exp_n[i];
    }
    if (trip.congestible) {
      delay_sum += trip.delay_s;
      ++delay_n;
    }
  }
  k[Kpi::kExpenditureWork] = exp_n[0] ? exp_sum[0] / exp_n[0] : 0.0;
  k[Kpi::kExpenditureSecondary] = exp_n[1] ? exp_sum[1] / exp_n[1] : 0.0;
  k[Kpi::kCostBurdenWork] = cost_burden(t, z, ActivityType::kWork);
  k[Kpi::kCostBurdenSecondary] = cost_burden(t, z, ActivityType::kSecondary);
  k[Kpi::kAvgDelayPerTrip] = delay_n ? delay_sum / delay_n : 0.0;

  k[Kpi::kBusCrowding] = bus_crowding(t, c);
  double legacy = 0;
  bool any_transit = false;
  for (const auto& leg : t.legs) {
    if (leg.mode != TripMode::kWalkTransit) continue;
    any_transit = true;
    legacy += leg.above_seats_hours;
  }
  k.no_transit_legs = !any_transit;
  k[Kpi::kBusCrowdingLegacy] = legacy;

  double miles = 0, delay = 0, pm25 = 0, ghg = 0;
  for (const auto& tr : t.traversals) {
    const double mi = tr.distance_m / kMetersPerMile;
    miles += mi;
    delay += tr.realized_s() - tr.free_flow_s;
    pm25 += mi * lookup(c.pm25_g_per_mile, vehicle_type_label(tr.vehicle_type, z), "PM2.5 factor");
    ghg += tr.fuel_joules / 1e6 * lookup(c.ghg_g_per_mj, fuel_of(tr.vehicle_type, z), "GHG factor");
  }
  k[Kpi::kVmt] = miles;
  k[Kpi::kTotalDelay] = delay;
  k[Kpi::kPm25] = pm25;
  k[Kpi::kGhg] = ghg;

  const auto fin = financial_parts(t, z);
  k[Kpi::kFinancialSustainability] = fin.sustainability();
  k[Kpi::kTransitNetCost] = fin.net_cost();
  k[Kpi::kPersonTrips] = static_cast<double>(t.trips.size());
  return k;
}

void write_kpis_csv(const KpiVector& k, const std::filesystem::path& path) {
  CsvWriter w(path);
  w.row({"name", "value", "units"});
  for (int i = 0; i < kNumKpis; ++i) {
    const auto kp = static_cast<Kpi>(i);
    w.row({kpi_name(kp), format_double(k[kp]), kpi_units(kp)});
  }
}

KpiVector read_kpis_csv(const std::filesystem::path& path) {
  const auto t = CsvTable::read(path);
  t.require_header({"name", "value", "units"});
  KpiVector k;
  std::array<bool, kNumKpis> seen{};
  for (std::size_t r = 0; r < t.size(); ++r) {
    const auto kp = parse_kpi(t.str(r, "name"));
    if (!kp) throw LoadError(t.name(), t.line(r), "KPI_UNKNOWN", "unknown KPI '" + t.str(r, "name") + "'");
    k[*kp] = t.real(r, "value");
    seen[static_cast<int>(*kp)] = true;
  }
  for (int i = 0; i < kNumKpis; ++i) {
    if (!seen[i]) throw LoadError(t.name(), -1, "KPI_MISSING", std::string("missing KPI ") + kInfo[i].name);
  }
  return k;
}

}  // namespace policysim
