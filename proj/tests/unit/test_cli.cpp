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
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "policysim/common/csv.hpp"
#include "test_support.hpp"

namespace policysim {
namespace {

namespace fs = std::filesystem;
using testing::read_file;
using testing::TempDir;
using testing::write_file;

struct CliResult {
  int code = -1;
  std::string output;  // stdout and stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(POLICYSIM_CLI_PATH) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

void write_empty_udi(const fs::path& dir) {
  fs::create_directories(dir);
  write_file(dir / "FrequencyAdjustment.csv", "route_id,start_time,end_time,headway_secs,exact_times\n");
  write_file(dir / "VehicleFleetMix.csv", "route_id,vehicle_type_id\n");
  write_file(dir / "MassTransitFares.csv", "route_id,age_min,age_max,fare\n");
  write_file(dir / "ModeIncentives.csv", "mode,age_min,age_max,income_min,income_max,amount\n");
}

int count_manifests(const fs::path& dir) {
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().filename() == "manifest.txt";
  return n;
}

/// One scenario, BAU run and calibration shared by every test in the suite.
class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir();
    const auto& d = dir_->path();
    ASSERT_EQ(run_cli("generate --seed 1 --agents 1000 --grid 6 --out " + q(d / "scen")).code, 0);
    ASSERT_EQ(run_cli("bau --scenario " + q(d / "scen") + " --iterations 3 --seed 2 --out " + q(d / "bau")).code, 0);
    const auto cal = run_cli("calibrate --scenario " + q(d / "scen") +
                             " --iterations 3 --seed 2 --samples 5 --objective post_contest --out " + q(d / "cal"));
    ASSERT_EQ(cal.code, 0) << cal.output;
    write_empty_udi(d / "udi");
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static fs::path path(const std::string& name) { return dir_->path() / name; }
  static std::string scenario() { return "--scenario " + q(path("scen")); }
  static std::string norms() { return "--norms " + q(path("cal") / "norms.csv"); }

  static TempDir* dir_;
};

TempDir* Cli::dir_ = nullptr;

TEST_F(Cli, GenerateIsReproducible) {
  ASSERT_EQ(run_cli("generate --seed 1 --agents 1000 --grid 6 --out " + q(path("scen2"))).code, 0);
  for (const auto& e : fs::directory_iterator(path("scen"))) {
    if (e.path().filename() == "manifest.txt") continue;
    EXPECT_EQ(read_file(e.path()), read_file(path("scen2") / e.path().filename())) << e.path().filename();
  }
  EXPECT_EQ(count_manifests(path("scen")), 1);
}

TEST_F(Cli, BauWritesEventsAndKpis) {
  EXPECT_TRUE(fs::exists(path("bau") / "events.csv"));
  EXPECT_TRUE(fs::exists(path("bau") / "kpis.csv"));
  EXPECT_EQ(count_manifests(path("bau")), 1);
  const auto manifest = read_file(path("bau") / "manifest.txt");
  EXPECT_NE(manifest.find("command=bau"), std::string::npos);
  EXPECT_NE(manifest.find("seed=2"), std::string::npos);
}

TEST_F(Cli, BauRerunIsByteIdentical) {
  ASSERT_EQ(run_cli("bau " + scenario() + " --iterations 3 --seed 2 --out " + q(path("bau2"))).code, 0);
  for (const char* f : {"events.csv", "kpis.csv", "legs.csv", "traversals.csv", "trips.csv", "iterations.csv"}) {
    EXPECT_EQ(read_file(path("bau") / f), read_file(path("bau2") / f)) << f;
  }
}

TEST_F(Cli, ScoreOfEmptyUdiIsTheBauFixedPoint) {
  const auto r = run_cli("score " + scenario() + " --iterations 3 --seed 2 --objective post_contest --udi " +
                         q(path("udi")) + " " + norms() + " --out " + q(path("score")));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(read_file(path("score") / "kpis.csv"), read_file(path("bau") / "kpis.csv"));
  EXPECT_EQ(count_manifests(path("score")), 1);

  const auto n = CsvTable::read(path("cal") / "norms.csv");
  std::map<std::string, std::pair<double, double>> stats;
  for (std::size_t i = 0; i < n.size(); ++i) stats[n.str(i, "kpi")] = {n.real(i, "mu"), n.real(i, "sigma")};
  const auto s = CsvTable::read(path("score") / "score_report.csv");
  ASSERT_EQ(s.size(), stats.size() + 1);
  double total = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const auto& [mu, sigma] = stats.at(s.str(i, "kpi"));
    EXPECT_EQ(s.real(i, "ratio"), 1.0);
    EXPECT_NEAR(s.real(i, "z"), (1.0 - mu) / sigma, 1e-12) << s.str(i, "kpi");
    total += s.real(i, "z");
  }
  EXPECT_EQ(s.str(s.size() - 1, "kpi"), "composite");
  EXPECT_NEAR(s.real(s.size() - 1, "z"), total, 1e-12);
}

TEST_F(Cli, OptimizeBudgetOneThenReport) {
  const auto r = run_cli("optimize " + scenario() + " " + norms() +
                         " --objective post_contest --algo rs --budget 1 --iterations 3 --seed 5 --sim-seed 2"
                         " --top-k 1 --reps 2 --final-iterations 3 --out " +
                         q(path("opt")));
  ASSERT_EQ(r.code, 0) << r.output;
  const auto h = CsvTable::read(path("opt") / "history.csv");
  ASSERT_EQ(h.size(), 1u);
  EXPECT_TRUE(fs::exists(path("opt") / "final_scores.csv"));

  ASSERT_EQ(run_cli("report --run " + q(path("opt"))).code, 0);
  const auto trace = CsvTable::read(path("opt") / "report" / "score_trace.csv");
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace.real(0, "best_so_far"), h.real(0, "score"));
  for (const char* f : {"score_trace.svg", "top_inputs.svg", "mode_split.svg", "activity_starts.svg", "bus_vmt.svg"}) {
    EXPECT_TRUE(fs::exists(path("opt") / "report" / f)) << f;
  }
  EXPECT_EQ(count_manifests(path("opt") / "report"), 1);
}

TEST_F(Cli, ToyOptimizeRerunIsByteIdentical) {
  for (const char* algo : {"rs", "ga", "tpe"}) {
    const std::string args = scenario() + " --toy --algo " + algo + " --budget 40 --seed 3 --top-k 2 --reps 2";
    const auto a = path(std::string("toy_a_") + algo);
    const auto b = path(std::string("toy_b_") + algo);
    ASSERT_EQ(run_cli("optimize " + args + " --out " + q(a)).code, 0);
    ASSERT_EQ(run_cli("optimize " + args + " --workers 2 --out " + q(b)).code, 0);
    EXPECT_EQ(CsvTable::read(a / "history.csv").size(), 40u);
    EXPECT_EQ(read_file(a / "history.csv"), read_file(b / "history.csv")) << algo;
    EXPECT_EQ(read_file(a / "final_scores.csv"), read_file(b / "final_scores.csv")) << algo;
  }
}

TEST_F(Cli, ValidationErrorsExitTwo) {
  auto r = run_cli("optimize " + scenario() + " --out " + q(path("x1")));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.output.rfind("ValidationError: ", 0), 0u) << r.output;
  EXPECT_EQ(std::count(r.output.begin(), r.output.end(), '\n'), 1);

  write_empty_udi(path("bad_csv"));
  write_file(path("bad_csv") / "FrequencyAdjustment.csv",
             "route_id,start_time,end_time,headway_secs,exact_times\n1340,21600,79200,x,1\n");
  r = run_cli("score " + scenario() + " --udi " + q(path("bad_csv")) + " " + norms() + " --out " + q(path("x2")));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("CSV_TYPE"), std::string::npos) << r.output;

  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("optimize " + scenario() + " --toy --algo sa --out " + q(path("x3"))).code, 2);
}

TEST_F(Cli, InfeasibleInputExitsThree) {
  write_empty_udi(path("bad_rule"));
  write_file(path("bad_rule") / "FrequencyAdjustment.csv",
             "route_id,start_time,end_time,headway_secs,exact_times\n1340,21600,79200,179,1\n");
  const auto r =
      run_cli("score " + scenario() + " --udi " + q(path("bad_rule")) + " " + norms() + " --out " + q(path("x4")));
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.output.rfind("InfeasibleInput: ", 0), 0u) << r.output;
  EXPECT_NE(r.output.find("RULE_HEADWAY_MIN"), std::string::npos);
}

TEST_F(Cli, RuntimeErrorExitsFour) {
  // A tiny population gives identical accessibility in every sample.
  ASSERT_EQ(run_cli("generate --agents 60 --grid 6 --out " + q(path("tiny"))).code, 0);
  const auto r =
      run_cli("calibrate --scenario " + q(path("tiny")) + " --iterations 2 --samples 4 --out " + q(path("x5")));
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(r.output.rfind("RuntimeError: ", 0), 0u) << r.output;
}

}  // namespace
}  // namespace policysim
