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

#include "policysim/udi/template.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "policysim/udi/rules.hpp"

namespace policysim {

SearchSpaceTemplate::SearchSpaceTemplate(const Scenario& z, int incentive_slots) : slots_(incentive_slots) {
  if (incentive_slots < 0) throw std::invalid_argument("incentive_slots must be >= 0");
  for (const auto& r : z.routes) route_ids_.push_back(r.id);
  std::sort(route_ids_.begin(), route_ids_.end());
  for (const auto& v : z.vehicle_types) vehicle_types_.push_back(v.id);

  std::vector<Dimension> dims;
  int block = 0;
  for (int64_t id : route_ids_) {
    const auto prefix = "route" + std::to_string(id) + ".";
    dims.push_back(Dimension::categorical(prefix + "vehicle", static_cast<int>(vehicle_types_.size()) + 1, block));
    dims.push_back(Dimension::continuous(prefix + "start_shift", 0, kMaxWindowShift, block));
    dims.push_back(Dimension::continuous(prefix + "end_shift", 0, kMaxWindowShift, block));
    dims.push_back(Dimension::continuous(prefix + "headway", 0, kMaxHeadwaySecs, block));
    dims.push_back(Dimension::continuous(prefix + "fare_youth", 0, kMaxFare, block));
    dims.push_back(Dimension::continuous(prefix + "fare_adult", 0, kMaxFare, block));
    dims.push_back(Dimension::continuous(prefix + "fare_senior", 0, kMaxFare, block));
    ++block;
  }
  for (int k = 0; k < slots_; ++k) {
    const auto prefix = "incentive" + std::to_string(k + 1) + ".";
    dims.push_back(
        Dimension::categorical(prefix + "mode", static_cast<int>(kTemplateIncentiveModes.size()) + 1, block));
    dims.push_back(Dimension::categorical(prefix + "age", static_cast<int>(kIncentiveAgeBins.size()), block));
    dims.push_back(Dimension::categorical(prefix + "income", static_cast<int>(kIncentiveIncomeBins.size()), block));
    dims.push_back(Dimension::continuous(prefix + "amount", 0, kMaxIncentive, block));
    ++block;
  }
  space_ = SearchSpace(std::move(dims));
}

DecisionVector SearchSpaceTemplate::decode(const Point& p) const {
  if (!space_.contains(p)) throw TemplateMismatch("point outside template bounds");
  DecisionVector d;
  std::size_t i = 0;
  for (int64_t route : route_ids_) {
    const int vehicle = static_cast<int>(p[i]);
    const int start = kWindowStart + static_cast<int>(std::lround(p[i + 1]));
    const int end = kWindowEnd - static_cast<int>(std::lround(p[i + 2]));
    const int headway = static_cast<int>(std::lround(p[i + 3]));
    if (vehicle > 0) d.fleet.push_back({route, vehicle_types_[vehicle - 1]});
    if (headway >= kMinHeadwaySecs) d.frequency.push_back({route, start, end, headway, 1});
    for (std::size_t b = 0; b < kFareAgeBins.size(); ++b) {
      const double fare = p[i + 4 + b];
      if (fare > 0) d.fares.push_back({route, kFareAgeBins[b].lo, kFareAgeBins[b].hi, fare});
    }
    i += kDimsPerRoute;
  }
  for (int k = 0; k < slots_; ++k) {
    const int mode = static_cast<int>(p[i]);
    const auto age = kIncentiveAgeBins[static_cast<std::size_t>(p[i + 1])];
    const auto income = kIncentiveIncomeBins[static_cast<std::size_t>(p[i + 2])];
    const double amount = p[i + 3];
    if (mode > 0 && amount > 0) {
      d.incentives.push_back({kTemplateIncentiveModes[mode - 1], age.lo, age.hi, income.lo, income.hi, amount});
    }
    i += kDimsPerIncentive;
  }
  return d;
}

Point SearchSpaceTemplate::encode(const DecisionVector& d) const {
  Point p = space_.zeros();
  std::map<int64_t, std::size_t> offset;
  for (std::size_t r = 0; r < route_ids_.size(); ++r) offset[route_ids_[r]] = r * kDimsPerRoute;
  auto route_offset = [&](int64_t route, const char* table) {
    auto it = offset.find(route);
    if (it == offset.end()) {
      throw TemplateMismatch(std::string(table) + ": route " + std::to_string(route) + " not in template");
    }
    return it->second;
  };

  std::map<int64_t, int> seen_freq, seen_fleet;
  for (const auto& f : d.frequency) {
    const auto o = route_offset(f.route_id, "FrequencyAdjustment");
    if (seen_freq[f.route_id]++) throw TemplateMismatch("FrequencyAdjustment: more than one row for a route");
    const int start_shift = f.start_time - kWindowStart;
    const int end_shift = kWindowEnd - f.end_time;
    if (start_shift < 0 || start_shift > kMaxWindowShift || end_shift < 0 || end_shift > kMaxWindowShift) {
      throw TemplateMismatch("FrequencyAdjustment: window outside the template range");
    }
    if (f.headway_secs < kMinHeadwaySecs || f.headway_secs > kMaxHeadwaySecs || f.exact_times != 1) {
      throw TemplateMismatch("FrequencyAdjustment: headway or exact_times outside the template");
    }
    p[o + 1] = start_shift;
    p[o + 2] = end_shift;
    p[o + 3] = f.headway_secs;
  }
  for (const auto& f : d.fleet) {
    const auto o = route_offset(f.route_id, "VehicleFleetMix");
    if (seen_fleet[f.route_id]++) throw TemplateMismatch("VehicleFleetMix: more than one row for a route");
    auto it = std::find(vehicle_types_.begin(), vehicle_types_.end(), f.vehicle_type_id);
    if (it == vehicle_types_.end())
      throw TemplateMismatch("VehicleFleetMix: unknown vehicle type " + f.vehicle_type_id);
    p[o] = static_cast<double>(it - vehicle_types_.begin() + 1);
  }
  for (const auto& f : d.fares) {
    const auto o = route_offset(f.route_id, "MassTransitFares");
    auto bin = std::find_if(kFareAgeBins.begin(), kFareAgeBins.end(),
                            [&](const AgeBin& b) { return b.lo == f.age_min && b.hi == f.age_max; });
    if (bin == kFareAgeBins.end()) throw TemplateMismatch("MassTransitFares: age range is not a template bin");
    if (!(f.fare > 0 && f.fare <= kMaxFare)) throw TemplateMismatch("MassTransitFares: fare outside (0, 10]");
    auto& slot = p[o + 4 + static_cast<std::size_t>(bin - kFareAgeBins.begin())];
    if (slot != 0) throw TemplateMismatch("MassTransitFares: two rows for one bin");
    slot = f.fare;
  }
  if (d.incentives.size() > static_cast<std::size_t>(slots_)) {
    throw TemplateMismatch("ModeIncentives: more rows than incentive slots");
  }
  std::size_t o = route_ids_.size() * kDimsPerRoute;
  for (const auto& inc : d.incentives) {
    auto mode = std::find(kTemplateIncentiveModes.begin(), kTemplateIncentiveModes.end(), inc.mode);
    if (mode == kTemplateIncentiveModes.end()) throw TemplateMismatch("ModeIncentives: mode not in template");
    auto age = std::find_if(kIncentiveAgeBins.begin(), kIncentiveAgeBins.end(),
                            [&](const AgeBin& b) { return b.lo == inc.age_min && b.hi == inc.age_max; });
    auto income = std::find_if(kIncentiveIncomeBins.begin(), kIncentiveIncomeBins.end(),
                               [&](const IncomeBin& b) { return b.lo == inc.income_min && b.hi == inc.income_max; });
    if (age == kIncentiveAgeBins.end() || income == kIncentiveIncomeBins.end()) {
      throw TemplateMismatch("ModeIncentives: age or income range is not a template bin");
    }
    if (!(inc.amount > 0 && inc.amount <= kMaxIncentive)) {
      throw TemplateMismatch("ModeIncentives: amount outside (0, 50]");
    }
    p[o] = static_cast<double>(mode - kTemplateIncentiveModes.begin() + 1);
    p[o + 1] = static_cast<double>(age - kIncentiveAgeBins.begin());
    p[o + 2] = static_cast<double>(income - kIncentiveIncomeBins.begin());
    p[o + 3] = inc.amount;
    o += kDimsPerIncentive;
  }
  return p;
}

}  // namespace policysim
