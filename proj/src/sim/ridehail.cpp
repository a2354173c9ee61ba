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

#include "policysim/sim/ridehail.hpp"

namespace policysim {

std::optional<Dispatch> dispatch_ridehail(const RideHailFleet& fleet, int node, const Skims& free_flow,
                                          double max_pickup_wait_s) {
  std::optional<Dispatch> best;
  for (std::size_t v = 0; v < fleet.size(); ++v) {
    if (!fleet.idle[v]) continue;
    const double t = free_flow.at(fleet.location[v], node);
    if (!(t <= max_pickup_wait_s)) continue;
    if (!best || t < best->pickup_s) best = Dispatch{static_cast<int>(v), t};
  }
  return best;
}

}  // namespace policysim
