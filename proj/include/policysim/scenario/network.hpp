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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace policysim {

enum ModeBit : uint8_t {
  kCarBit = 1,
  kWalkBit = 2,
  kBusBit = 4,
};

uint8_t parse_mode_bits(const std::string& s);  // "car|walk|bus"
std::string format_mode_bits(uint8_t bits);

struct Node {
  int64_t id = 0;
  double x_m = 0;
  double y_m = 0;
};

struct Link {
  int64_t id = 0;
  int from = 0;  // node index
  int to = 0;
  double length_m = 0;
  double speed_mps = 0;
  double capacity_vph = 0;
  uint8_t modes = 0;

  double free_flow_s() const { return length_m / speed_mps; }
  bool allows(ModeBit m) const { return (modes & m) != 0; }
};

class Network {
 public:
  int add_node(const Node& n);
  int add_link(const Link& l);  // endpoints are node indices

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_links() const { return links_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const Node& node(int i) const { return nodes_[i]; }
  const Link& link(int i) const { return links_[i]; }
  std::span<const int> out_links(int node) const { return out_[node]; }
  std::span<const int> in_links(int node) const { return in_[node]; }

  std::optional<int> node_index(int64_t id) const;
  std::optional<int> link_index(int64_t id) const;

  /// Nodes reachable from `src` over links allowing `mode` (reverse = follow links backwards).
  std::vector<char> reachable(int src, ModeBit mode, bool reverse = false) const;
  /// True iff every node in `subset` reaches every other one over `mode` links.
  bool strongly_connected(std::span<const int> subset, ModeBit mode) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::unordered_map<int64_t, int> node_by_id_;
  std::unordered_map<int64_t, int> link_by_id_;
};

}  // namespace policysim
