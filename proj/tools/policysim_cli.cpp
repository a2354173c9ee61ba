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

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "policysim/common/error.hpp"
#include "policysim/kpi/kpi.hpp"
#include "policysim/kpi/tables.hpp"
#include "policysim/optimize/evaluator.hpp"
#include "policysim/optimize/finalize.hpp"
#include "policysim/optimize/ga.hpp"
#include "policysim/optimize/random_search.hpp"
#include "policysim/optimize/tpe.hpp"
#include "policysim/report/report.hpp"
#include "policysim/scenario/fixture.hpp"
#include "policysim/scenario/scenario_io.hpp"
#include "policysim/scoring/norms.hpp"
#include "policysim/scoring/objective.hpp"
#include "policysim/scoring/score.hpp"
#include "policysim/sim/events.hpp"
#include "policysim/sim/simulation.hpp"
#include "policysim/udi/rules.hpp"
#include "policysim/udi/template.hpp"
#include "policysim/udi/udi_io.hpp"

#ifndef POLICYSIM_VERSION
#define POLICYSIM_VERSION "dev"
#endif

namespace fs = std::filesystem;
using namespace policysim;

namespace {

enum ExitCode { kOk = 0, kValidationExit = 2, kInfeasibleExit = 3, kRuntimeExit = 4 };

struct Args {
  std::string command;
  fs::path scenario;
  fs::path out;
  fs::path udi;
  fs::path norms;
  fs::path bau;
  fs::path run;
  std::string objective = "post_contest";
  std::string algo = "tpe";
  uint64_t seed = 1;
  uint64_t sim_seed = 1;
  int iterations = 40;
  int budget = 300;
  int workers = 1;
  int samples = 50;
  int agents = 1000;
  int grid = 6;
  int top_k = 5;
  int reps = 5;
  int final_iterations = 100;
  double top_fraction = 0.05;
  bool toy = false;
};

/// Writes manifest.txt; must precede every other file in the output directory.
void write_manifest(const Args& a) {
  fs::create_directories(a.out);
  std::ofstream f(a.out / "manifest.txt", std::ios::binary);
  if (!f) throw RuntimeError("cannot write " + (a.out / "manifest.txt").string());
  f << "command=" << a.command << '\n';
  f << "config=" << (a.scenario.empty() ? "" : (a.scenario / "config.txt").string()) << '\n';
  f << "scenario=" << a.scenario.string() << '\n';
  f << "objective=" << a.objective << '\n';
  f << "seed=" << a.seed << '\n';
  f << "out=" << a.out.string() << '\n';
  f << "version=" << POLICYSIM_VERSION << '\n';
  if (a.command == "bau" || a.command == "score" || a.command == "calibrate" || a.command == "optimize") {
    f << "iterations=" << a.iterations << '\n';
  }
  if (a.command == "calibrate") f << "samples=" << a.samples << '\n';
  if (a.command == "score") f << "udi=" << a.udi.string() << '\n';
  if (a.command == "optimize") {
    f << "algo=" << a.algo << '\n' << "budget=" << a.budget << '\n' << "sim_seed=" << a.sim_seed << '\n';
    f << "top_k=" << a.top_k << '\n' << "reps=" << a.reps << '\n' << "final_iterations=" << a.final_iterations << '\n';
    f << "toy=" << (a.toy ? 1 : 0) << '\n';
  }
  if (a.command == "generate") f << "agents=" << a.agents << '\n' << "grid=" << a.grid << '\n';
  if (a.command == "report") f << "run=" << a.run.string() << '\n';
}

void write_run_outputs(const SimOutputs& out, const SimTables& t, const KpiVector& k, const Scenario& z,
                       const fs::path& dir) {
  write_events_csv(out.events, z, dir / "events.csv");
  write_iterations_csv(out.iterations, dir / "iterations.csv");
  write_tables(t, z, dir);
  write_kpis_csv(k, dir / "kpis.csv");
}

KpiVector load_or_run_bau(const Args& a, const Scenario& z) {
  if (!a.bau.empty()) return read_kpis_csv(a.bau);
  return bau_kpis(z, a.sim_seed, a.iterations);
}

int cmd_generate(const Args& a) {
  write_manifest(a);
  save_scenario(generate_sioux_micro(a.seed, a.agents, a.grid), a.out);
  return kOk;
}

int cmd_bau(const Args& a) {
  const Scenario z = load_scenario(a.scenario);
  write_manifest(a);
  const DecisionVector d;
  const SimOutputs out = run_simulation(d, z, a.seed, a.iterations);
  const SimTables t = build_tables(out.events, z);
  write_run_outputs(out, t, compute_kpis(t, d, z), z, a.out);
  return kOk;
}

int cmd_calibrate(const Args& a) {
  const Scenario z = load_scenario(a.scenario);
  const ObjectiveSpec spec = resolve_objective(a.objective);
  write_manifest(a);
  const KpiVector bau = load_or_run_bau(a, z);
  CalibrationOptions opt;
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.iterations = a.iterations;
  opt.workers = a.workers;
  write_kpis_csv(bau, a.out / "bau_kpis.csv");
  write_norms_csv(calibrate_norms(z, spec, bau, opt), a.out / "norms.csv");
  return kOk;
}

int cmd_score(const Args& a) {
  const Scenario z = load_scenario(a.scenario);
  const DecisionVector d = load_udi(a.udi);
  const auto violations = validate(d, z);
  if (!violations.empty()) throw InfeasibleError(describe(violations.front()));
  const ObjectiveSpec spec = resolve_objective(a.objective);
  const NormStats norms = read_norms_csv(a.norms);
  write_manifest(a);
  const KpiVector bau = load_or_run_bau(a, z);
  const SimOutputs out = run_simulation(d, z, a.sim_seed, a.iterations);
  const SimTables t = build_tables(out.events, z);
  const KpiVector k = compute_kpis(t, d, z);
  write_run_outputs(out, t, k, z, a.out);
  write_score_report_csv(composite_score(k, bau, spec, norms), a.out / "score_report.csv");
  return kOk;
}

int cmd_optimize(const Args& a) {
  const Scenario z = load_scenario(a.scenario);
  std::unique_ptr<TrialEvaluator> ev;
  std::unique_ptr<SimulationEvaluator> sim_ev;
  const SearchSpaceTemplate tmpl(z);
  if (a.toy) {
    ev = std::make_unique<ToyEvaluator>(tmpl.space(), a.sim_seed);
    write_manifest(a);
  } else {
    const ObjectiveSpec spec = resolve_objective(a.objective);
    const NormStats norms = read_norms_csv(a.norms);
    write_manifest(a);
    sim_ev = std::make_unique<SimulationEvaluator>(z, spec, norms);
    if (!a.bau.empty()) sim_ev->set_bau(a.sim_seed, a.iterations, read_kpis_csv(a.bau));
  }
  const TrialEvaluator& evaluator = a.toy ? *ev : *sim_ev;

  SearchOptions opt;
  opt.budget = a.budget;
  opt.seed = a.seed;
  opt.sim_seed = a.sim_seed;
  opt.iterations = a.iterations;
  opt.workers = a.workers;
  History h;
  if (a.algo == "rs") {
    h = random_search(evaluator, opt);
  } else if (a.algo == "ga") {
    h = ga_search(evaluator, opt);
  } else if (a.algo == "tpe") {
    h = tpe_search(evaluator, opt);
  } else {
    throw Error(ErrorClass::kValidation, "unknown algorithm '" + a.algo + "' (expected rs, ga or tpe)");
  }
  write_history_csv(h, evaluator.space(), a.out / "history.csv");

  FinalizeOptions fin;
  fin.top_k = std::min<int>(a.top_k, static_cast<int>(h.size()));
  fin.reps = a.reps;
  fin.iterations = a.final_iterations;
  fin.seed = a.sim_seed;
  fin.workers = a.workers;
  const auto final = finalize_top(h, evaluator, fin);
  write_final_scores_csv(final, a.out / "final_scores.csv");

  const DecisionVector best = tmpl.decode(final.front().point);
  save_udi(best, a.out / "best_udi");
  if (!a.toy) {
    const SimOutputs out = run_simulation(best, z, a.sim_seed, a.final_iterations);
    const SimTables t = build_tables(out.events, z);
    write_run_outputs(out, t, compute_kpis(t, best, z), z, a.out);
    write_score_report_csv(sim_ev->report(final.front().point, a.sim_seed, a.final_iterations),
                           a.out / "score_report.csv");
  }
  return kOk;
}

int cmd_report(const Args& a) {
  if (!fs::exists(a.run / "manifest.txt")) {
    throw LoadError(a.run.string(), -1, "REPORT_INPUT", "not a run directory (manifest.txt missing)");
  }
  Args b = a;
  if (b.out.empty()) b.out = a.run / "report";
  write_manifest(b);
  ReportOptions opt;
  opt.top_fraction = a.top_fraction;
  write_report(a.run, b.out, opt);
  return kOk;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

int fail(ErrorClass cls, const std::string& what) {
  std::cerr << error_class_name(cls) << ": " << one_line(what) << '\n';
  switch (cls) {
    case ErrorClass::kValidation:
      return kValidationExit;
    case ErrorClass::kInfeasible:
      return kInfeasibleExit;
    case ErrorClass::kRuntime:
      return kRuntimeExit;
  }
  return kRuntimeExit;
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"policysim: transit policy simulation, scoring and optimization"};
  app.set_version_flag("--version", std::string(POLICYSIM_VERSION));
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write the synthetic Sioux Micro scenario");
  gen->add_option("--seed", a.seed, "Generator seed");
  gen->add_option("--agents", a.agents, "Number of agents")->check(CLI::PositiveNumber);
  gen->add_option("--grid", a.grid, "Grid dimension")->check(CLI::Range(2, 1000));
  gen->add_option("--out", a.out, "Output directory")->required();

  auto* bau = app.add_subcommand("bau", "Simulate business as usual (empty UDIs)");
  auto* cal = app.add_subcommand("calibrate", "Fit normalization statistics on random template inputs");
  auto* score = app.add_subcommand("score", "Score one set of UDI files");
  auto* opt = app.add_subcommand("optimize", "Search the input template");
  for (auto* sub : {bau, cal, score, opt}) {
    sub->add_option("--scenario", a.scenario, "Scenario directory")->required()->check(CLI::ExistingDirectory);
    sub->add_option("--seed", a.seed, "Seed");
    sub->add_option("--iterations", a.iterations, "Simulation iterations")->check(CLI::PositiveNumber);
    sub->add_option("--out", a.out, "Output directory")->required();
  }
  for (auto* sub : {cal, score, opt}) {
    sub->add_option("--objective", a.objective, "contest, post_contest, new_kpis or custom:<path>");
    sub->add_option("--bau", a.bau, "BAU kpis.csv to reuse instead of simulating BAU");
  }
  for (auto* sub : {bau, cal, score, opt}) {
    sub->add_option("--workers", a.workers, "OpenMP threads for trial evaluation and skims")
        ->check(CLI::PositiveNumber);
  }
  cal->add_option("--samples", a.samples, "Number of sampled inputs")->check(CLI::Range(2, 1000000));
  score->add_option("--udi", a.udi, "Directory with the four UDI CSVs")->required()->check(CLI::ExistingDirectory);
  score->add_option("--norms", a.norms, "norms.csv")->required()->check(CLI::ExistingFile);
  opt->add_option("--norms", a.norms, "norms.csv")->check(CLI::ExistingFile);
  opt->add_option("--algo", a.algo, "rs, ga or tpe")->check(CLI::IsMember({"rs", "ga", "tpe"}));
  opt->add_option("--budget", a.budget, "Number of trials")->check(CLI::PositiveNumber);
  opt->add_option("--sim-seed", a.sim_seed, "Simulation seed shared by all trials");
  opt->add_option("--top-k", a.top_k, "Trials re-evaluated at the end")->check(CLI::PositiveNumber);
  opt->add_option("--reps", a.reps, "Replications per finalized trial")->check(CLI::PositiveNumber);
  opt->add_option("--final-iterations", a.final_iterations, "Iterations per replication")->check(CLI::PositiveNumber);
  opt->add_flag("--toy", a.toy, "Use the synthetic separable objective instead of the simulator");

  auto* rep = app.add_subcommand("report", "Plots and summary CSVs for a finished run");
  rep->add_option("--run", a.run, "Run directory")->required()->check(CLI::ExistingDirectory);
  rep->add_option("--out", a.out, "Output directory (default <run>/report)");
  rep->add_option("--top-fraction", a.top_fraction, "Share of best trials shown")->check(CLI::Range(1e-9, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(ErrorClass::kValidation, e.what());
  }

  try {
    a.command = app.get_subcommands().front()->get_name();
    if (a.command == "score" || a.command == "bau") a.sim_seed = a.seed;
    if (a.command == "calibrate") a.sim_seed = a.seed;
    if (a.command == "optimize" && !a.toy && a.norms.empty()) {
      throw Error(ErrorClass::kValidation, "--norms is required unless --toy is given");
    }
    if (a.workers > 0) omp_set_num_threads(a.workers);
    if (a.command == "generate") return cmd_generate(a);
    if (a.command == "bau") return cmd_bau(a);
    if (a.command == "calibrate") return cmd_calibrate(a);
    if (a.command == "score") return cmd_score(a);
    if (a.command == "optimize") return cmd_optimize(a);
    return cmd_report(a);
  } catch (const Error& e) {
    return fail(e.error_class(), e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ErrorClass::kValidation, e.what());
  } catch (const std::exception& e) {
    return fail(ErrorClass::kRuntime, e.what());
  }
}
