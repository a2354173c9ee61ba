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

#include <optional>
#include <vector>

#include "policysim/sim/skims.hpp"

namespace policysim {

/// Ride-hail vehicles idle in place between jobs.
struct RideHailFleet {
  std::vector<int> location;  // node index
  std::vector<char> idle;

  std::size_t size() const { return location.size(); }
};

struct Dispatch {
  int vehicle;
  double pickup_s;  // free-flow time from the vehicle to the request
};

/// Nearest idle vehicle by free-flow time (ties to the lower index); nullopt if none is
/// within max_pickup_wait_s.
std::optional<Dispatch> dispatch_ridehail(const RideHailFleet& fleet, int node, const Skims& free_flow,
                                          double max_pickup_wait_s);

}  // namespace policysim
