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

#include <span>
#include <vector>

#include "policysim/scenario/scenario.hpp"
#include "policysim/sim/skims.hpp"
#include "policysim/udi/decision.hpp"

namespace policysim {

enum class AccessMode { kCar, kTransit, kAll };

/// Zone-to-zone travel times used for accessibility.
///   car      shortest path over the given link times; 0 on the diagonal
///   walk     shortest walk distance / walk speed
///   transit  access walk + half the route's mean headway + in-vehicle + egress walk,
///            best single-route option; 0 on the diagonal
///   all      element-wise minimum of the three
struct AccessibilityMatrices {
  int n = 0;
  std::vector<double> car, walk, transit;

  double time(AccessMode m, int o, int d) const;
};

AccessibilityMatrices build_accessibility_matrices(const Scenario& z, const DecisionVector& d,
                                                   std::span<const double> car_link_times);

/// Nodes hosting at least one activity of `type` in any plan.
std::vector<int> opportunity_nodes(const Scenario& z, ActivityType type);

/// Mean over agents of the number of opportunity nodes reachable from home within threshold_s.
double accessibility(const Scenario& z, const AccessibilityMatrices& m, ActivityType type, AccessMode mode,
                     double threshold_s);

}  // namespace policysim
