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

#include "policysim/scenario/network.hpp"

#include <deque>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"

namespace policysim {

uint8_t parse_mode_bits(const std::string& s) {
  uint8_t bits = 0;
  for (const auto& tok : split(s, '|')) {
    if (tok == "car")
      bits |= kCarBit;
    else if (tok == "walk")
      bits |= kWalkBit;
    else if (tok == "bus")
      bits |= kBusBit;
    else
      throw std::invalid_argument("unknown mode '" + tok + "'");
  }
  return bits;
}

std::string format_mode_bits(uint8_t bits) {
  std::string s;
  auto add = [&](const char* m) { s += (s.empty() ? "" : "|") + std::string(m); };
  if (bits & kCarBit) add("car");
  if (bits & kWalkBit) add("walk");
  if (bits & kBusBit) add("bus");
  return s;
}

int Network::add_node(const Node& n) {
  const int idx = static_cast<int>(nodes_.size());
  nodes_.push_back(n);
  out_.emplace_back();
  in_.emplace_back();
  node_by_id_.emplace(n.id, idx);
  return idx;
}

int Network::add_link(const Link& l) {
  const int idx = static_cast<int>(links_.size());
  links_.push_back(l);
  out_[l.from].push_back(idx);
  in_[l.to].push_back(idx);
  link_by_id_.emplace(l.id, idx);
  return idx;
}

std::optional<int> Network::node_index(int64_t id) const {
  auto it = node_by_id_.find(id);
  if (it == node_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Network::link_index(int64_t id) const {
  auto it = link_by_id_.find(id);
  if (it == link_by_id_.end()) return std::nullopt;
  return it->second;
}

std::vector<char> Network::reachable(int src, ModeBit mode, bool reverse) const {
  std::vector<char> seen(nodes_.size(), 0);
  std::deque<int> queue{src};
  seen[src] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int li : reverse ? in_[u] : out_[u]) {
      const auto& l = links_[li];
      if (!l.allows(mode)) continue;
      const int v = reverse ? l.from : l.to;
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

bool Network::strongly_connected(std::span<const int> subset, ModeBit mode) const {
  if (subset.empty()) return true;
  const auto fwd = reachable(subset[0], mode, false);
  const auto bwd = reachable(subset[0], mode, true);
  for (int n : subset) {
    if (!fwd[n] || !bwd[n]) return false;
  }
  return true;
}

}  // namespace policysim
