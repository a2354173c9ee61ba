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

#include <cstddef>
#include <string>
#include <vector>

#include "policysim/scenario/scenario.hpp"
#include "policysim/udi/decision.hpp"

namespace policysim {

// Business-rule limits.
inline constexpr int kMinHeadwaySecs = 180;   // 3 minutes
inline constexpr int kMaxHeadwaySecs = 7200;  // 120 minutes
inline constexpr int kMaxServicePeriods = 5;  // per route
inline constexpr int kMinAgeSpan = 4;         // inclusive bounds: [16,20] covers five ages
inline constexpr double kMinIncomeSpan = 5000.0;
inline constexpr double kMaxFare = 10.0;
inline constexpr double kMaxIncentive = 50.0;
inline constexpr int kMaxAge = 120;

enum class UdiTable { kFrequency, kFleet, kFares, kIncentives };
const char* udi_table_name(UdiTable t);

struct Violation {
  UdiTable table;
  std::size_t row;   // index into the table as given
  std::string rule;  // e.g. RULE_HEADWAY_MIN
  std::string key;   // row content summary, stable under row permutation
  std::string detail;
};

/// g(d; z) = 0 as data: an empty result means d is feasible. Violations are sorted
/// by (table, rule, key).
std::vector<Violation> validate(const DecisionVector& d, const Scenario& z);

/// Clips violated numeric bounds, drops rows that cannot be fixed by clipping
/// (unknown references, overlaps, surplus periods shortest first). Feasible input is
/// returned unchanged.
DecisionVector repair(const DecisionVector& d, const Scenario& z);

std::string describe(const Violation& v);

}  // namespace policysim
