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

// Brute-force reference implementations shared by the unit and acceptance tests. Each one is
// deliberately naive and written without reference to the library code it checks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "policysim/common/rng.hpp"
#include "policysim/scenario/network.hpp"

namespace policysim::oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct PathResult {
  double cost = kInf;
  std::vector<int> links;
  int optimal_paths = 0;  // number of simple paths achieving `cost`
};

/// Enumerates every simple path from s to t over links allowing `mode`.
inline PathResult exhaustive_shortest_path(const Network& net, int s, int t, ModeBit mode,
                                           const std::vector<double>& cost) {
  PathResult best;
  if (s == t) {
    best.cost = 0;
    best.optimal_paths = 1;
    return best;
  }
  std::vector<char> visited(net.num_nodes(), 0);
  std::vector<int> stack;
  auto dfs = [&](auto&& self, int node, double acc) -> void {
    if (node == t) {
      if (acc < best.cost) {
        best.cost = acc;
        best.links = stack;
        best.optimal_paths = 1;
      } else if (acc == best.cost) {
        ++best.optimal_paths;
      }
      return;
    }
    visited[node] = 1;
    for (std::size_t li = 0; li < net.num_links(); ++li) {
      const auto& l = net.link(static_cast<int>(li));
      if (l.from != node || !l.allows(mode) || visited[l.to]) continue;
      stack.push_back(static_cast<int>(li));
      self(self, l.to, acc + cost[li]);
      stack.pop_back();
    }
    visited[node] = 0;
  };
  dfs(dfs, s, 0.0);
  return best;
}

/// Floyd-Warshall over node-to-node costs; 0 on the diagonal.
inline std::vector<double> floyd_warshall(const Network& net, ModeBit mode, const std::vector<double>& cost) {
  const std::size_t n = net.num_nodes();
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (std::size_t li = 0; li < net.num_links(); ++li) {
    const auto& l = net.link(static_cast<int>(li));
    if (!l.allows(mode)) continue;
    auto& cell = d[static_cast<std::size_t>(l.from) * n + l.to];
    cell = std::min(cell, cost[li]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double via = d[i * n + k] + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  }
  return d;
}

struct Trip {
  double start = 0;
  std::vector<int> links;
};

/// Replays vehicles through point-queue links by repeatedly scanning for the earliest pending
/// link entry. A link admits vehicles in entry order; each leaves no earlier than its
/// free-flow time after entry and no earlier than `3600 / capacity` after the previous
/// vehicle left. Returns per-trip link exit times, or nullopt if two vehicles would enter the
/// same link at the same instant (order would then be ambiguous).
inline std::optional<std::vector<std::vector<double>>> replay_queues(const Network& net,
                                                                     const std::vector<Trip>& trips) {
  std::vector<std::vector<double>> exits(trips.size());
  std::vector<double> next_entry(trips.size());
  std::vector<std::size_t> pos(trips.size(), 0);
  for (std::size_t v = 0; v < trips.size(); ++v) next_entry[v] = trips[v].start;
  std::vector<double> last_exit(net.num_links(), -kInf);
  std::vector<std::vector<double>> entries(net.num_links());
  while (true) {
    std::size_t pick = trips.size();
    for (std::size_t v = 0; v < trips.size(); ++v) {
      if (pos[v] >= trips[v].links.size()) continue;
      if (pick == trips.size() || next_entry[v] < next_entry[pick]) pick = v;
    }
    if (pick == trips.size()) break;
    const int li = trips[pick].links[pos[pick]];
    const double t = next_entry[pick];
    for (double e : entries[li]) {
      if (e == t) return std::nullopt;
    }
    entries[li].push_back(t);
    const auto& l = net.link(li);
    const double exit = std::max(t + l.length_m / l.speed_mps, last_exit[li] + 3600.0 / l.capacity_vph);
    last_exit[li] = exit;
    exits[pick].push_back(exit);
    next_entry[pick] = exit;
    ++pos[pick];
  }
  return exits;
}

/// Same point-queue rule for N vehicles on one link, integer seconds, advanced one tick at a time.
inline std::vector<long> tick_queue(const std::vector<long>& entries, long free_flow_s, long service_s) {
  std::vector<long> exits(entries.size(), -1);
  std::size_t head = 0;
  long last_release = std::numeric_limits<long>::min() / 2;
  for (long tick = 0; head < entries.size(); ++tick) {
    if (entries[head] + free_flow_s <= tick && tick >= last_release + service_s) {
      exits[head++] = tick;
      last_release = tick;
    }
  }
  return exits;
}

inline std::vector<double> softmax(const std::vector<double>& u) {
  std::vector<double> p(u.size());
  double total = 0;
  for (std::size_t i = 0; i < u.size(); ++i) total += std::exp(u[i]);
  for (std::size_t i = 0; i < u.size(); ++i) p[i] = std::exp(u[i]) / total;
  return p;
}

}  // namespace policysim::oracle
