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

#include "policysim/udi/rules.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "policysim/common/csv.hpp"

namespace policysim {

const char* udi_table_name(UdiTable t) {
  switch (t) {
    case UdiTable::kFrequency:
      return "FrequencyAdjustment";
    case UdiTable::kFleet:
      return "VehicleFleetMix";
    case UdiTable::kFares:
      return "MassTransitFares";
    case UdiTable::kIncentives:
      return "ModeIncentives";
  }
  return "?";
}

std::string describe(const Violation& v) {
  return std::string(udi_table_name(v.table)) + " row " + std::to_string(v.row) + ": " + v.rule + " (" + v.detail + ")";
}

namespace {

std::string freq_key(const FrequencyAdjustment& f) {
  return std::to_string(f.route_id) + "@" + std::to_string(f.start_time) + "-" + std::to_string(f.end_time) + "/" +
         std::to_string(f.headway_secs);
}

std::string fare_key(const FareRule& f) {
  return std::to_string(f.route_id) + "@" + std::to_string(f.age_min) + "-" + std::to_string(f.age_max) + "$" +
         format_double(f.fare);
}

std::string incentive_key(const ModeIncentive& i) {
  return std::string(incentive_mode_name(i.mode)) + "@" + std::to_string(i.age_min) + "-" + std::to_string(i.age_max) +
         "/" + format_double(i.income_min) + "-" + format_double(i.income_max) + "$" + format_double(i.amount);
}

bool ages_ok(int lo, int hi) { return lo >= 0 && hi <= kMaxAge && lo <= hi; }

// Indices of rows per route, sorted by (start, end, original index).
std::map<int64_t, std::vector<std::size_t>> periods_by_route(const std::vector<FrequencyAdjustment>& rows) {
  std::map<int64_t, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out[rows[i].route_id].push_back(i);
  for (auto& [route, idx] : out) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(rows[a].start_time, rows[a].end_time, rows[a].headway_secs, a) <
             std::tie(rows[b].start_time, rows[b].end_time, rows[b].headway_secs, b);
    });
  }
  return out;
}

}  // namespace

std::vector<Violation> validate(const DecisionVector& d, const Scenario& z) {
  std::vector<Violation> out;
  auto add = [&](UdiTable t, std::size_t row, const char* rule, std::string key, std::string detail) {
    out.push_back({t, row, rule, std::move(key), std::move(detail)});
  };

  for (std::size_t i = 0; i < d.frequency.size(); ++i) {
    const auto& f = d.frequency[i];
    const auto key = freq_key(f);
    if (!z.route_index(f.route_id)) add(UdiTable::kFrequency, i, "RULE_UNKNOWN_ROUTE", key, "route does not exist");
    if (f.headway_secs < kMinHeadwaySecs) {
      add(UdiTable::kFrequency, i, "RULE_HEADWAY_MIN", key, "headway below 180 s");
    }
    if (f.headway_secs > kMaxHeadwaySecs) {
      add(UdiTable::kFrequency, i, "RULE_HEADWAY_MAX", key, "headway above 7200 s");
    }
    if (f.start_time < 0 || f.end_time > static_cast<int>(kDayEnd)) {
      add(UdiTable::kFrequency, i, "RULE_PERIOD_RANGE", key, "service period outside [0, 86400]");
    }
    if (f.start_time >= f.end_time) add(UdiTable::kFrequency, i, "RULE_PERIOD_ORDER", key, "start must precede end");
    if (f.exact_times != 0 && f.exact_times != 1) {
      add(UdiTable::kFrequency, i, "RULE_EXACT_TIMES", key, "exact_times must be 0 or 1");
    }
  }
  for (const auto& [route, idx] : periods_by_route(d.frequency)) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& f = d.frequency[idx[k]];
      if (k >= static_cast<std::size_t>(kMaxServicePeriods)) {
        add(UdiTable::kFrequency, idx[k], "RULE_MAX_PERIODS", freq_key(f), "more than five service periods on route");
      }
      if (k > 0 && f.start_time < d.frequency[idx[k - 1]].end_time) {
        add(UdiTable::kFrequency, idx[k], "RULE_PERIOD_OVERLAP", freq_key(f), "overlaps another service period");
      }
    }
  }

  std::map<int64_t, std::size_t> fleet_seen;
  for (std::size_t i = 0; i < d.fleet.size(); ++i) {
    const auto& f = d.fleet[i];
    const auto key = std::to_string(f.route_id) + ":" + f.vehicle_type_id;
    if (!z.route_index(f.route_id)) add(UdiTable::kFleet, i, "RULE_UNKNOWN_ROUTE", key, "route does not exist");
    if (!z.vehicle_type_index(f.vehicle_type_id)) {
      add(UdiTable::kFleet, i, "RULE_UNKNOWN_VEHICLE_TYPE", key, "vehicle type not in catalog");
    }
    if (fleet_seen.count(f.route_id)) {
      add(UdiTable::kFleet, i, "RULE_FLEET_DUPLICATE", key, "more than one row for route");
    }
    fleet_seen.emplace(f.route_id, i);
  }

  for (std::size_t i = 0; i < d.fares.size(); ++i) {
    const auto& f = d.fares[i];
    const auto key = fare_key(f);
    if (!z.route_index(f.route_id)) add(UdiTable::kFares, i, "RULE_UNKNOWN_ROUTE", key, "route does not exist");
    if (!(f.fare >= 0 && f.fare <= kMaxFare)) add(UdiTable::kFares, i, "RULE_FARE_RANGE", key, "fare outside [0, 10]");
    if (!ages_ok(f.age_min, f.age_max)) add(UdiTable::kFares, i, "RULE_AGE_RANGE", key, "ages outside [0, 120]");
    if (f.age_max - f.age_min < kMinAgeSpan) {
      add(UdiTable::kFares, i, "RULE_AGE_SPAN", key, "age segment smaller than five years");
    }
  }
  {
    std::map<int64_t, std::vector<std::size_t>> by_route;
    for (std::size_t i = 0; i < d.fares.size(); ++i) by_route[d.fares[i].route_id].push_back(i);
    for (auto& [route, idx] : by_route) {
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(d.fares[a].age_min, d.fares[a].age_max, d.fares[a].fare, a) <
               std::tie(d.fares[b].age_min, d.fares[b].age_max, d.fares[b].fare, b);
      });
      int covered_to = -1;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const auto& f = d.fares[idx[k]];
        if (k > 0 && f.age_min <= covered_to) {
          add(UdiTable::kFares, idx[k], "RULE_FARE_OVERLAP", fare_key(f), "age range overlaps another fare row");
        }
        covered_to = std::max(covered_to, f.age_max);
      }
    }
  }

  for (std::size_t i = 0; i < d.incentives.size(); ++i) {
    const auto& inc = d.incentives[i];
    const auto key = incentive_key(inc);
    if (!ages_ok(inc.age_min, inc.age_max))
      add(UdiTable::kIncentives, i, "RULE_AGE_RANGE", key, "ages outside [0, 120]");
    if (inc.age_max - inc.age_min < kMinAgeSpan) {
      add(UdiTable::kIncentives, i, "RULE_AGE_SPAN", key, "age segment smaller than five years");
    }
    if (inc.income_min < 0 || inc.income_max < inc.income_min) {
      add(UdiTable::kIncentives, i, "RULE_INCOME_RANGE", key, "income bounds invalid");
    }
    if (inc.income_max - inc.income_min < kMinIncomeSpan) {
      add(UdiTable::kIncentives, i, "RULE_INCOME_SPAN", key, "income segment smaller than $5,000");
    }
    if (!(inc.amount >= 0 && inc.amount <= kMaxIncentive)) {
      add(UdiTable::kIncentives, i, "RULE_INCENTIVE_RANGE", key, "amount outside [0, 50]");
    }
  }

  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.table, a.rule, a.key, a.row) < std::tie(b.table, b.rule, b.key, b.row);
  });
  return out;
}

namespace {

void fix_age_span(int& lo, int& hi) {
  lo = std::clamp(lo, 0, kMaxAge);
  hi = std::clamp(hi, 0, kMaxAge);
  if (lo > hi) std::swap(lo, hi);
  if (hi - lo < kMinAgeSpan) {
    hi = lo + kMinAgeSpan;
    if (hi > kMaxAge) {
      hi = kMaxAge;
      lo = kMaxAge - kMinAgeSpan;
    }
  }
}

}  // namespace

DecisionVector repair(const DecisionVector& d, const Scenario& z) {
  DecisionVector out;

  {
    std::vector<FrequencyAdjustment> rows;
    for (auto f : d.frequency) {
      if (!z.route_index(f.route_id)) continue;
      if (f.exact_times != 0 && f.exact_times != 1) f.exact_times = 1;
      f.headway_secs = std::clamp(f.headway_secs, kMinHeadwaySecs, kMaxHeadwaySecs);
      f.start_time = std::clamp(f.start_time, 0, static_cast<int>(kDayEnd));
      f.end_time = std::clamp(f.end_time, 0, static_cast<int>(kDayEnd));
      if (f.start_time >= f.end_time) continue;
      rows.push_back(f);
    }
    std::vector<char> keep(rows.size(), 1);
    for (const auto& [route, idx] : periods_by_route(rows)) {
      // Trim overlaps against the previous kept period.
      int prev_end = -1;
      std::vector<std::size_t> kept;
      for (std::size_t i : idx) {
        auto& f = rows[i];
        if (f.start_time < prev_end) f.start_time = prev_end;
        if (f.start_time >= f.end_time) {
          keep[i] = 0;
          continue;
        }
        prev_end = f.end_time;
        kept.push_back(i);
      }
      if (kept.size() > static_cast<std::size_t>(kMaxServicePeriods)) {
        // Drop shortest first; among equal durations the later one goes first.
        std::vector<std::size_t> by_duration = kept;
        std::stable_sort(by_duration.begin(), by_duration.end(), [&](std::size_t a, std::size_t b) {
          const int da = rows[a].end_time - rows[a].start_time;
          const int db = rows[b].end_time - rows[b].start_time;
          if (da != db) return da < db;
          return rows[a].start_time > rows[b].start_time;
        });
        for (std::size_t k = 0; k + kMaxServicePeriods < kept.size(); ++k) keep[by_duration[k]] = 0;
      }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (keep[i]) out.frequency.push_back(rows[i]);
    }
  }

  for (const auto& f : d.fleet) {
    if (!z.route_index(f.route_id) || !z.vehicle_type_index(f.vehicle_type_id)) continue;
    const bool dup = std::any_of(out.fleet.begin(), out.fleet.end(),
                                 [&](const FleetAssignment& o) { return o.route_id == f.route_id; });
    if (!dup) out.fleet.push_back(f);
  }

  for (auto f : d.fares) {
    if (!z.route_index(f.route_id)) continue;
    f.fare = std::clamp(f.fare, 0.0, kMaxFare);
    fix_age_span(f.age_min, f.age_max);
    const bool overlaps = std::any_of(out.fares.begin(), out.fares.end(), [&](const FareRule& o) {
      return o.route_id == f.route_id && f.age_min <= o.age_max && o.age_min <= f.age_max;
    });
    if (!overlaps) out.fares.push_back(f);
  }

  for (auto inc : d.incentives) {
    inc.amount = std::clamp(inc.amount, 0.0, kMaxIncentive);
    fix_age_span(inc.age_min, inc.age_max);
    inc.income_min = std::max(0.0, inc.income_min);
    inc.income_max = std::max(0.0, inc.income_max);
    if (inc.income_min > inc.income_max) std::swap(inc.income_min, inc.income_max);
    if (inc.income_max - inc.income_min < kMinIncomeSpan) {
      inc.income_max = inc.income_min + kMinIncomeSpan;
      // The sum can round down by one ulp.
      while (inc.income_max - inc.income_min < kMinIncomeSpan) {
        inc.income_max = std::nextafter(inc.income_max, HUGE_VAL);
      }
    }
    out.incentives.push_back(inc);
  }
  return out;
}

}  // namespace policysim
