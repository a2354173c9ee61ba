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

#include <gtest/gtest.h>

#include <cmath>
#include <deque>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"
#include "policysim/scenario/fixture.hpp"
#include "policysim/scenario/scenario_io.hpp"
#include "test_support.hpp"

namespace policysim {
namespace {

using testing::TempDir;

const char* const kScenarioFiles[] = {"nodes.csv",      "network.csv", "vehicle_types.csv", "routes.csv",
                                      "population.csv", "plans.csv",   "config.txt"};

TEST(Fixture, GridCountsAndRidehailFleet) {
  const Scenario z = generate_sioux_micro(1, 1000, 6);
  EXPECT_EQ(z.network.num_nodes(), 36u);
  EXPECT_EQ(z.network.num_links(), 120u);
  EXPECT_EQ(z.plans.size(), 1000u);
  EXPECT_EQ(z.routes.size(), 2u);
  EXPECT_EQ(z.ridehail_fleet_size(), static_cast<int>(std::ceil(z.config.ridehail_fleet_fraction * 1000)));
}

TEST(Fixture, RegenerationIsByteIdentical) {
  TempDir a, b;
  save_scenario(generate_sioux_micro(1, 1000, 6), a.path());
  save_scenario(generate_sioux_micro(1, 1000, 6), b.path());
  for (const char* f : kScenarioFiles) {
    EXPECT_EQ(testing::read_file(a / f), testing::read_file(b / f)) << f;
  }
}

TEST(Fixture, DifferentSeedsGiveDifferentPopulations) {
  TempDir a, b;
  save_scenario(generate_sioux_micro(1, 1000, 6), a.path());
  save_scenario(generate_sioux_micro(2, 1000, 6), b.path());
  EXPECT_NE(testing::read_file(a / "population.csv"), testing::read_file(b / "population.csv"));
}

TEST(Fixture, MinimalScenarioLoads) {
  TempDir dir;
  save_scenario(generate_sioux_micro(1, 1, 2), dir.path());
  const Scenario z = load_scenario(dir.path());
  EXPECT_EQ(z.plans.size(), 1u);
  EXPECT_EQ(z.network.num_nodes(), 4u);
}

TEST(Fixture, LoadRoundTripForSampledSeeds) {
  for (uint64_t seed : {1u, 3u, 17u, 99u, 12345u}) {
    TempDir dir;
    const Scenario z = generate_sioux_micro(seed, 200, 5);
    save_scenario(z, dir.path());
    const Scenario back = load_scenario(dir.path());
    EXPECT_EQ(back.plans.size(), z.plans.size());
    EXPECT_EQ(back.network.num_links(), z.network.num_links());
    TempDir again;
    save_scenario(back, again.path());
    for (const char* f : kScenarioFiles) {
      EXPECT_EQ(testing::read_file(dir / f), testing::read_file(again / f)) << "seed " << seed << " " << f;
    }
  }
}

TEST(Fixture, TableThreeVehicleCatalog) {
  TempDir dir;
  save_scenario(generate_sioux_micro(1, 10, 3), dir.path());
  const Scenario z = load_scenario(dir.path());
  ASSERT_EQ(z.vehicle_types.size(), 4u);
  const auto idx = z.vehicle_type_index("BUS-DEFAULT");
  ASSERT_TRUE(idx);
  const VehicleType& v = z.vehicle_types[*idx];
  EXPECT_EQ(v.fuel_type, "diesel");
  EXPECT_DOUBLE_EQ(v.joules_per_meter, 20048);
  EXPECT_DOUBLE_EQ(v.cost_per_hour, 89.88);
  EXPECT_EQ(v.seats, 37);
  EXPECT_EQ(v.standing, 20);
}

TEST(Fixture, EveryPlanSatisfiesAgeRules) {
  const Scenario z = generate_sioux_micro(1, 1000, 6);
  for (std::size_t a = 0; a < z.plans.size(); ++a) {
    const auto& acts = z.plans[a].activities;
    ASSERT_GE(acts.size(), 3u);
    EXPECT_EQ(acts.front().type, ActivityType::kHome);
    EXPECT_EQ(acts.back().type, ActivityType::kHome);
    for (std::size_t i = 1; i + 1 < acts.size(); ++i) EXPECT_LT(acts[i - 1].end_time_s, acts[i].end_time_s);
    if (z.agent_person(static_cast<int>(a)).age < 18) {
      for (const auto& act : acts) EXPECT_NE(act.type, ActivityType::kWork);
    }
  }
}

TEST(Fixture, CarPathBetweenEveryPairOfActivityNodes) {
  const Scenario z = generate_sioux_micro(1, 1000, 6);
  std::vector<char> is_activity(z.network.num_nodes(), 0);
  for (const auto& p : z.plans) {
    for (const auto& a : p.activities) is_activity[a.node] = 1;
  }
  for (int src = 0; src < static_cast<int>(z.network.num_nodes()); ++src) {
    if (!is_activity[src]) continue;
    // Plain BFS over car links, independent of the library's reachability helper.
    std::vector<char> seen(z.network.num_nodes(), 0);
    std::deque<int> q{src};
    seen[src] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (const auto& l : z.network.links()) {
        if (l.from == u && l.allows(kCarBit) && !seen[l.to]) {
          seen[l.to] = 1;
          q.push_back(l.to);
        }
      }
    }
    for (int dst = 0; dst < static_cast<int>(z.network.num_nodes()); ++dst) {
      if (is_activity[dst]) EXPECT_TRUE(seen[dst]) << src << " -> " << dst;
    }
  }
}

TEST(LoadScenario, EmptyPlansLoadWithZeroAgents) {
  TempDir dir;
  save_scenario(generate_sioux_micro(1, 5, 3), dir.path());
  testing::write_file(dir / "plans.csv", "person_id,seq,activity,node,end_time\n");
  const Scenario z = load_scenario(dir.path());
  EXPECT_EQ(z.plans.size(), 0u);
  EXPECT_EQ(z.persons.size(), 5u);
}

TEST(LoadScenario, WorkForFifteenYearOldIsRejected) {
  TempDir dir;
  save_scenario(generate_sioux_micro(1, 5, 3), dir.path());
  std::string pop = "person_id,age,household_id,income_usd,home_node\n1,15,1,40000,1\n";
  testing::write_file(dir / "population.csv", pop);
  testing::write_file(dir / "plans.csv",
                      "person_id,seq,activity,node,end_time\n1,0,Home,1,28800\n1,1,Work,2,61200\n1,2,Home,1,\n");
  try {
    load_scenario(dir.path());
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.rule(), "PLAN_WORK_AGE");
    EXPECT_EQ(e.file(), "plans.csv");
    EXPECT_GT(e.row(), 0);
  }
}

TEST(LoadScenario, MissingFileAndDanglingReference) {
  TempDir dir;
  save_scenario(generate_sioux_micro(1, 5, 3), dir.path());
  std::filesystem::remove(dir / "routes.csv");
  try {
    load_scenario(dir.path());
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.rule(), "FILE_MISSING");
  }
  TempDir dir2;
  save_scenario(generate_sioux_micro(1, 5, 3), dir2.path());
  testing::write_file(dir2 / "plans.csv", "person_id,seq,activity,node,end_time\n999,0,Home,1,28800\n999,1,Home,1,\n");
  EXPECT_THROW(load_scenario(dir2.path()), LoadError);
}

TEST(LoadScenario, InvalidLinkAttributes) {
  TempDir dir;
  save_scenario(generate_sioux_micro(1, 5, 3), dir.path());
  std::string net = testing::read_file(dir / "network.csv");
  const auto first = net.find('\n') + 1;
  const auto end = net.find('\n', first);
  auto cells = split_csv_line(net.substr(first, end - first));
  cells[3] = "0";
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) row += (i ? "," : "") + cells[i];
  net.replace(first, end - first, row);
  testing::write_file(dir / "network.csv", net);
  try {
    load_scenario(dir.path());
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.rule(), "NET_LENGTH");
    EXPECT_EQ(e.row(), 2);
  }
}

TEST(Generate, RejectsBadArguments) {
  EXPECT_THROW(generate_sioux_micro(1, 0, 6), std::invalid_argument);
  EXPECT_THROW(generate_sioux_micro(1, 10, 1), std::invalid_argument);
}

}  // namespace
}  // namespace policysim
