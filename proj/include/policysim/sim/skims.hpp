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

#include "policysim/scenario/network.hpp"

namespace policysim {

struct ShortestPathTree {
  int source = -1;
  std::vector<double> dist;    // +inf where unreachable
  std::vector<int> pred_link;  // -1 at the source and unreachable nodes
};

/// Single-source Dijkstra over links allowing `mode`, with per-link cost.
/// Ties are broken by node index so results are reproducible.
ShortestPathTree dijkstra(const Network& net, int source, ModeBit mode, std::span<const double> link_cost);

/// Link indices from the tree's source to `target` (empty if target is the source or unreachable).
std::vector<int> extract_path(const Network& net, const ShortestPathTree& tree, int target);

/// All-pairs shortest path costs and predecessor links, row-major by origin.
struct Skims {
  int n = 0;
  std::vector<double> cost;
  std::vector<int> pred_link;

  double at(int o, int d) const { return cost[static_cast<std::size_t>(o) * n + d]; }
  std::vector<int> path(const Network& net, int o, int d) const;
};

/// Reference implementation: one Dijkstra per origin, in order.
Skims all_pairs_serial(const Network& net, ModeBit mode, std::span<const double> link_cost);
/// OpenMP over origins; identical output to the serial version. threads <= 0 uses the runtime default.
Skims all_pairs_parallel(const Network& net, ModeBit mode, std::span<const double> link_cost, int threads = 0);

std::vector<double> free_flow_costs(const Network& net);
std::vector<double> length_costs(const Network& net);

}  // namespace policysim
