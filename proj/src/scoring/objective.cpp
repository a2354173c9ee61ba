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

#include "policysim/scoring/objective.hpp"

#include <algorithm>
#include <cctype>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"

namespace policysim {

namespace {

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

ObjectiveTerm term(Kpi k, int alpha) { return ObjectiveTerm{k, alpha, std::nullopt, std::nullopt}; }

ObjectiveTerm clamped(Kpi k, int alpha) { return ObjectiveTerm{k, alpha, kFinancialClampFloor, kFinancialClampCeil}; }

}  // namespace

ObjectiveSpec objective_preset(std::string_view name) {
  const auto n = normalize(name);
  if (n == "contest") {
    // Legacy crowding and the signed financial balance; no clamp.
    return ObjectiveSpec{
        "contest",
        Aggregation::kCoefficient,
        {term(Kpi::kWorkAccessibility, -1), term(Kpi::kSecondaryAccessibility, -1), term(Kpi::kExpenditureWork, 1),
         term(Kpi::kExpenditureSecondary, 1), term(Kpi::kBusCrowdingLegacy, 1), term(Kpi::kVmt, 1),
         term(Kpi::kAvgDelayPerTrip, 1), term(Kpi::kFinancialSustainability, -1), term(Kpi::kPm25, 1)}};
  }
  if (n == "postcontest") {
    return ObjectiveSpec{
        "post_contest",
        Aggregation::kExponent,
        {term(Kpi::kWorkAccessibility, -1), term(Kpi::kSecondaryAccessibility, -1), term(Kpi::kExpenditureWork, 1),
         term(Kpi::kExpenditureSecondary, 1), term(Kpi::kBusCrowding, 1), term(Kpi::kVmt, 1),
         term(Kpi::kAvgDelayPerTrip, 1), clamped(Kpi::kTransitNetCost, -1), term(Kpi::kPm25, 1)}};
  }
  if (n == "newkpis") {
    return ObjectiveSpec{"new_kpis",
                         Aggregation::kExponent,
                         {term(Kpi::kCarWorkAccessibility, -1), term(Kpi::kCarSecondaryAccessibility, -1),
                          term(Kpi::kTransitWorkAccessibility, -1), term(Kpi::kTransitSecondaryAccessibility, -1),
                          term(Kpi::kCostBurdenWork, 1), term(Kpi::kCostBurdenSecondary, 1), term(Kpi::kBusCrowding, 1),
                          term(Kpi::kVmt, 1), term(Kpi::kAvgDelayPerTrip, 1), clamped(Kpi::kTransitNetCost, -1),
                          term(Kpi::kPm25, 1), term(Kpi::kGhg, 1)}};
  }
  throw Error(ErrorClass::kValidation, "unknown objective preset '" + std::string(name) + "'");
}

ObjectiveSpec load_objective_csv(const std::filesystem::path& path) {
  const auto t = CsvTable::read(path);
  t.require_header({"kpi", "alpha", "clamp_floor", "clamp_ceil"});
  ObjectiveSpec spec;
  spec.name = "custom:" + path.filename().string();
  spec.aggregation = Aggregation::kExponent;
  for (std::size_t r = 0; r < t.size(); ++r) {
    const auto k = parse_kpi(t.str(r, "kpi"));
    if (!k) throw LoadError(t.name(), t.line(r), "OBJECTIVE_KPI", "unknown KPI '" + t.str(r, "kpi") + "'");
    const auto alpha = t.integer(r, "alpha");
    if (alpha != 1 && alpha != -1) throw LoadError(t.name(), t.line(r), "OBJECTIVE_ALPHA", "alpha must be 1 or -1");
    ObjectiveTerm term{*k, static_cast<int>(alpha), std::nullopt, std::nullopt};
    if (!t.blank(r, "clamp_floor")) term.clamp_floor = t.real(r, "clamp_floor");
    if (!t.blank(r, "clamp_ceil")) term.clamp_ceil = t.real(r, "clamp_ceil");
    if (term.clamp_floor && term.clamp_ceil && *term.clamp_floor > *term.clamp_ceil) {
      throw LoadError(t.name(), t.line(r), "OBJECTIVE_CLAMP", "clamp_floor exceeds clamp_ceil");
    }
    if (std::any_of(spec.terms.begin(), spec.terms.end(), [&](const ObjectiveTerm& o) { return o.kpi == *k; })) {
      throw LoadError(t.name(), t.line(r), "OBJECTIVE_DUPLICATE", "KPI listed twice");
    }
    spec.terms.push_back(term);
  }
  if (spec.terms.empty()) throw LoadError(t.name(), -1, "OBJECTIVE_EMPTY", "objective has no KPIs");
  return spec;
}

ObjectiveSpec resolve_objective(std::string_view arg) {
  constexpr std::string_view kCustom = "custom:";
  if (arg.substr(0, kCustom.size()) == kCustom) return load_objective_csv(std::string(arg.substr(kCustom.size())));
  return objective_preset(arg);
}

}  // namespace policysim
