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
#include <optional>
#include <string>
#include <string_view>

#include "policysim/kpi/tables.hpp"
#include "policysim/scenario/scenario.hpp"
#include "policysim/udi/decision.hpp"

namespace policysim {

enum class Kpi : int {
  kWorkAccessibility,
  kSecondaryAccessibility,
  kCarWorkAccessibility,
  kCarSecondaryAccessibility,
  kTransitWorkAccessibility,
  kTransitSecondaryAccessibility,
  kExpenditureWork,
  kExpenditureSecondary,
  kCostBurdenWork,
  kCostBurdenSecondary,
  kBusCrowding,
  kBusCrowdingLegacy,
  kVmt,
  kTotalDelay,
  kAvgDelayPerTrip,
  kFinancialSustainability,
  kTransitNetCost,
  kPm25,
  kGhg,
  kPersonTrips,
  kCount
};
inline constexpr int kNumKpis = static_cast<int>(Kpi::kCount);

const char* kpi_name(Kpi k);
const char* kpi_units(Kpi k);
std::optional<Kpi> parse_kpi(std::string_view name);

struct KpiVector {
  std::array<double, kNumKpis> values{};
  bool no_transit_legs = false;  // bus_crowding is 0 by definition when set

  double& operator[](Kpi k) { return values[static_cast<int>(k)]; }
  double operator[](Kpi k) const { return values[static_cast<int>(k)]; }
};

/// Mean over trips of (expenditure + hours * VOT) / household income, for trips whose
/// destination activity is `purpose`. 0 when there are no such trips.
double cost_burden(const SimTables& t, const Scenario& z, ActivityType purpose);

/// Mean over transit legs of sum_band hours * multiplier(band).
double bus_crowding(const SimTables& t, const GlobalConfig& c);

struct FinancialParts {
  double fares = 0;
  double incentives = 0;
  double fuel_cost = 0;
  double labour_cost = 0;

  double operating() const { return fuel_cost + labour_cost; }
  double sustainability() const { return fares - incentives - operating(); }
  double net_cost() const { return operating() + incentives - fares; }
};
FinancialParts financial_parts(const SimTables& t, const Scenario& z);

/// Computes every KPI from the tables of the final iteration. Throws RuntimeError when an
/// emission factor or fuel price is missing for a vehicle present in the traversals.
KpiVector compute_kpis(const SimTables& t, const DecisionVector& d, const Scenario& z);

void write_kpis_csv(const KpiVector& k, const std::filesystem::path& path);
KpiVector read_kpis_csv(const std::filesystem::path& path);

}  // namespace policysim
