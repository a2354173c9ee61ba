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
#include <string>
#include <vector>

#include "policysim/common/error.hpp"
#include "policysim/optimize/search_space.hpp"
#include "policysim/scenario/scenario.hpp"
#include "policysim/udi/decision.hpp"

namespace policysim {

class TemplateMismatch : public Error {
 public:
  explicit TemplateMismatch(const std::string& what) : Error(ErrorClass::kInfeasible, what) {}
};

struct AgeBin {
  int lo, hi;
};
struct IncomeBin {
  double lo, hi;
};

/// Fixed fare bins: youth, adult, senior.
inline constexpr std::array<AgeBin, 3> kFareAgeBins{{{0, 15}, {16, 60}, {61, 120}}};
/// Incentive age/income bins; the last entry of each covers everyone.
inline constexpr std::array<AgeBin, 4> kIncentiveAgeBins{{{0, 15}, {16, 60}, {61, 120}, {0, 120}}};
inline constexpr std::array<IncomeBin, 4> kIncentiveIncomeBins{
    {{0, 30000}, {30000, 75000}, {75000, 1000000}, {0, 1000000}}};
inline constexpr std::array<IncentiveMode, 2> kTemplateIncentiveModes{IncentiveMode::kRideHail,
                                                                      IncentiveMode::kWalkTransit};

/// Service window shared by all route slots: [kWindowStart + start_shift, kWindowEnd - end_shift].
inline constexpr int kWindowStart = 21600;
inline constexpr int kWindowEnd = 79200;
inline constexpr int kMaxWindowShift = 10800;

/// Fixed-dimension numeric encoding of a DecisionVector.
///
/// Per route (ascending route id), one block of 7 coordinates:
///   vehicle    categorical, 0 = keep default, k = catalog[k-1]
///   start      shift in [0, 10800] s after 06:00
///   end        shift in [0, 10800] s before 22:00
///   headway    [0, 7200] s; below 180 means "no frequency row"
///   fare_youth, fare_adult, fare_senior   [0, 10] USD; 0 means "no fare row"
/// Per incentive slot, one block of 4 coordinates:
///   mode       categorical {none, ride_hail, walk_transit}
///   age        categorical over kIncentiveAgeBins
///   income     categorical over kIncentiveIncomeBins
///   amount     [0, 50] USD; 0 means "no incentive row"
/// Times are rounded to whole seconds on decode.
class SearchSpaceTemplate {
 public:
  static constexpr int kDimsPerRoute = 7;
  static constexpr int kDimsPerIncentive = 4;

  SearchSpaceTemplate(const Scenario& z, int incentive_slots = 3);

  const SearchSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const std::vector<int64_t>& route_ids() const { return route_ids_; }
  const std::vector<std::string>& vehicle_type_ids() const { return vehicle_types_; }
  int incentive_slots() const { return slots_; }

  /// Throws TemplateMismatch if any coordinate is outside the template bounds.
  DecisionVector decode(const Point& p) const;
  /// Throws TemplateMismatch if d cannot be expressed by the template.
  Point encode(const DecisionVector& d) const;

 private:
  std::vector<int64_t> route_ids_;
  std::vector<std::string> vehicle_types_;
  int slots_;
  SearchSpace space_;
};

}  // namespace policysim
