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

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "policysim/scenario/network.hpp"
#include "policysim/scenario/scenario.hpp"

namespace policysim::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("policysim_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

/// Adds a link a->b (and b->a when two_way) with the given attributes.
inline void add_road(Network& net, int a, int b, double length_m, double speed_mps, double capacity_vph,
                     bool two_way = true, uint8_t modes = kCarBit | kWalkBit | kBusBit) {
  for (int dir = 0; dir < (two_way ? 2 : 1); ++dir) {
    Link l;
    l.id = static_cast<int64_t>(net.num_links()) + 1;
    l.from = dir == 0 ? a : b;
    l.to = dir == 0 ? b : a;
    l.length_m = length_m;
    l.speed_mps = speed_mps;
    l.capacity_vph = capacity_vph;
    l.modes = modes;
    net.add_link(l);
  }
}

/// Network with nodes 0..n-1 at x = 1000 * i.
inline Network line_nodes(int n) {
  Network net;
  for (int i = 0; i < n; ++i) net.add_node(Node{i + 1, 1000.0 * i, 0.0});
  return net;
}

/// Minimal valid scenario: the given network, the default bus catalog, no routes, no agents.
inline Scenario bare_scenario(Network net) {
  Scenario z;
  z.network = std::move(net);
  z.vehicle_types = {
      {"BUS-DEFAULT", "diesel", 20048, 89.88, 37, 20},
      {"BUS-SMALL-HD", "diesel", 18043.2, 90.18, 27, 10},
  };
  return z;
}

/// Appends a household with one person and a plan Home -> ... -> Home. Returns the agent index.
inline int add_agent(Scenario& z, int age, double income, int home, const std::vector<Activity>& activities) {
  Household hh;
  hh.id = static_cast<int64_t>(z.households.size()) + 1;
  hh.income_usd = income;
  hh.home_node = home;
  z.households.push_back(hh);
  Person p;
  p.id = static_cast<int64_t>(z.persons.size()) + 1;
  p.age = age;
  p.household = static_cast<int>(z.households.size()) - 1;
  z.persons.push_back(p);
  Plan plan;
  plan.person = static_cast<int>(z.persons.size()) - 1;
  plan.activities = activities;
  z.plans.push_back(plan);
  return static_cast<int>(z.plans.size()) - 1;
}

}  // namespace policysim::testing
