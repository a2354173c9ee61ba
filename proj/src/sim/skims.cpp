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

#include "policysim/sim/skims.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <queue>

namespace policysim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void dijkstra_into(const Network& net, int source, ModeBit mode, std::span<const double> cost, double* dist,
                   int* pred) {
  const int n = static_cast<int>(net.num_nodes());
  std::fill(dist, dist + n, kInf);
  std::fill(pred, pred + n, -1);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[source] = 0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (int li : net.out_links(u)) {
      const auto& l = net.link(li);
      if (!l.allows(mode)) continue;
      const double nd = d + cost[li];
      if (nd < dist[l.to]) {
        dist[l.to] = nd;
        pred[l.to] = li;
        heap.emplace(nd, l.to);
      }
    }
  }
}

std::vector<int> walk_back(const Network& net, const int* pred, int source, int target) {
  std::vector<int> path;
  if (target == source) return path;
  int v = target;
  while (v != source) {
    const int li = pred[v];
    if (li < 0) return {};
    path.push_back(li);
    v = net.link(li).from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

ShortestPathTree dijkstra(const Network& net, int source, ModeBit mode, std::span<const double> link_cost) {
  ShortestPathTree t;
  t.source = source;
  t.dist.resize(net.num_nodes());
  t.pred_link.resize(net.num_nodes());
  dijkstra_into(net, source, mode, link_cost, t.dist.data(), t.pred_link.data());
  return t;
}

std::vector<int> extract_path(const Network& net, const ShortestPathTree& tree, int target) {
  if (tree.source < 0) return {};
  return walk_back(net, tree.pred_link.data(), tree.source, target);
}

std::vector<int> Skims::path(const Network& net, int o, int d) const {
  return walk_back(net, pred_link.data() + static_cast<std::size_t>(o) * n, o, d);
}

Skims all_pairs_serial(const Network& net, ModeBit mode, std::span<const double> link_cost) {
  Skims s;
  s.n = static_cast<int>(net.num_nodes());
  s.cost.resize(static_cast<std::size_t>(s.n) * s.n);
  s.pred_link.resize(s.cost.size());
  for (int o = 0; o < s.n; ++o) {
    const auto off = static_cast<std::size_t>(o) * s.n;
    dijkstra_into(net, o, mode, link_cost, s.cost.data() + off, s.pred_link.data() + off);
  }
  return s;
}

Skims all_pairs_parallel(const Network& net, ModeBit mode, std::span<const double> link_cost, int threads) {
  Skims s;
  s.n = static_cast<int>(net.num_nodes());
  s.cost.resize(static_cast<std::size_t>(s.n) * s.n);
  s.pred_link.resize(s.cost.size());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (int o = 0; o < s.n; ++o) {
    const auto off = static_cast<std::size_t>(o) * s.n;
    dijkstra_into(net, o, mode, link_cost, s.cost.data() + off, s.pred_link.data() + off);
  }
  return s;
}

std::vector<double> free_flow_costs(const Network& net) {
  std::vector<double> c(net.num_links());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = net.link(static_cast<int>(i)).free_flow_s();
  return c;
}

std::vector<double> length_costs(const Network& net) {
  std::vector<double> c(net.num_links());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = net.link(static_cast<int>(i)).length_m;
  return c;
}

}  // namespace policysim
