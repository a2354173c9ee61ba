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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "policysim/common/error.hpp"
#include "policysim/common/rng.hpp"
#include "policysim/optimize/batch.hpp"
#include "policysim/optimize/evaluator.hpp"
#include "policysim/optimize/finalize.hpp"
#include "policysim/optimize/ga.hpp"
#include "policysim/optimize/history.hpp"
#include "policysim/optimize/random_search.hpp"
#include "policysim/optimize/search_space.hpp"
#include "policysim/optimize/tpe.hpp"
#include "policysim/scenario/fixture.hpp"
#include "policysim/scoring/norms.hpp"
#include "policysim/scoring/objective.hpp"
#include "policysim/udi/rules.hpp"
#include "policysim/udi/template.hpp"
#include "test_support.hpp"

namespace policysim {
namespace {

using testing::TempDir;

const Scenario& tiny_world() {
  static const Scenario z = generate_sioux_micro(1, 50, 6);
  return z;
}

const SearchSpace& template_space() {
  static const SearchSpaceTemplate t(tiny_world());
  return t.space();
}

SearchSpace unit_cube(std::size_t n) {
  std::vector<Dimension> dims;
  for (std::size_t i = 0; i < n; ++i) dims.push_back(Dimension::continuous("x" + std::to_string(i), 0, 1, 0));
  return SearchSpace(dims);
}

/// Score depends on the point and the simulation seed only.
class SeededStub : public TrialEvaluator {
 public:
  explicit SeededStub(SearchSpace s) : space_(std::move(s)) {}
  const SearchSpace& space() const override { return space_; }
  double evaluate(const Point& p, uint64_t seed, int iterations) const override {
    double v = static_cast<double>(mix_seed(seed, static_cast<uint64_t>(iterations)) % 1000) / 1000.0;
    for (double x : p) v += x;
    return v;
  }

 private:
  SearchSpace space_;
};

/// Ignores the seed entirely.
class FixedStub : public TrialEvaluator {
 public:
  explicit FixedStub(SearchSpace s) : space_(std::move(s)) {}
  const SearchSpace& space() const override { return space_; }
  double evaluate(const Point& p, uint64_t, int) const override { return std::accumulate(p.begin(), p.end(), 0.0); }

 private:
  SearchSpace space_;
};

SearchOptions options(int budget, uint64_t seed) {
  SearchOptions o;
  o.budget = budget;
  o.seed = seed;
  o.iterations = 1;
  return o;
}

void expect_same(const History& a, const History& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].point, b[i].point);
    EXPECT_EQ(a[i].score, b[i].score);
    EXPECT_EQ(a[i].generation, b[i].generation);
  }
}

void expect_nonincreasing(const History& h) {
  const auto trace = h.best_so_far();
  ASSERT_EQ(trace.size(), h.size());
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1]);
  EXPECT_EQ(trace.back(), h.best().score);
}

History with_scores(const std::vector<double>& scores, std::size_t dims = 1) {
  History h;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    Trial t;
    t.id = static_cast<int>(i);
    t.point = Point(dims, static_cast<double>(i));
    t.score = scores[i];
    h.append(t);
  }
  return h;
}

// ---- search space --------------------------------------------------------------------------------

TEST(SearchSpace, SampleClipContains) {
  const auto& s = template_space();
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto p = s.sample(rng);
    ASSERT_TRUE(s.contains(p));
    for (std::size_t d = 0; d < s.size(); ++d) {
      if (s[d].categorical()) EXPECT_EQ(p[d], std::floor(p[d]));
    }
  }
  Point wild(s.size());
  for (std::size_t d = 0; d < s.size(); ++d) wild[d] = (d % 2 ? 1e9 : -1e9) + 0.4;
  EXPECT_FALSE(s.contains(wild));
  EXPECT_TRUE(s.contains(s.clip(wild)));
}

// ---- history ---------------------------------------------------------------------------------------

TEST(History, BestTiesGoToEarliestAndEmptyThrows) {
  EXPECT_THROW(History().best_index(), std::exception);
  const auto h = with_scores({3, 1, 2, 1, 5});
  EXPECT_EQ(h.best_index(), 1u);
  EXPECT_EQ(h.best_so_far(), (std::vector<double>{3, 1, 1, 1, 1}));
}

TEST(History, CsvRoundTrip) {
  TempDir dir;
  const auto space = unit_cube(3);
  History h;
  Rng rng(2);
  for (int i = 0; i < 7; ++i) {
    Trial t;
    t.id = i;
    t.point = space.sample(rng);
    t.score = uniform01(rng) - 0.5;
    t.seed = 11;
    t.iterations = 40;
    h.append(t);
  }
  write_history_csv(h, space, dir / "history.csv");
  std::vector<std::string> names;
  const auto back = read_history_csv(dir / "history.csv", &names);
  EXPECT_EQ(names, (std::vector<std::string>{"x0", "x1", "x2"}));
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(back[i].id, h[i].id);
    EXPECT_EQ(back[i].score, h[i].score);
    EXPECT_EQ(back[i].point, h[i].point);
    EXPECT_EQ(back[i].seed, 11u);
    EXPECT_EQ(back[i].iterations, 40);
  }
}

// ---- evaluation ------------------------------------------------------------------------------------

TEST(EvaluateTrial, RejectsOutOfBoundsPoint) {
  const ToyEvaluator ev(unit_cube(2), 1);
  EXPECT_THROW(evaluate_trial(ev, 0, {0.5, 1.5}, 1, 1), InfeasibleError);
  const auto t = evaluate_trial(ev, 4, {0.5, 0.5}, 9, 3);
  EXPECT_EQ(t.id, 4);
  EXPECT_EQ(t.seed, 9u);
  EXPECT_EQ(t.iterations, 3);
}

TEST(ToyEvaluator, MinimumAtCentre) {
  const ToyEvaluator ev(template_space(), 7);
  EXPECT_TRUE(ev.space().contains(ev.centre()));
  EXPECT_EQ(ev.evaluate(ev.centre(), 1, 1), 0.0);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_GE(ev.evaluate(ev.space().sample(rng), 1, 1), 0.0);
}

TEST(Batch, ParallelMatchesSerial) {
  const ToyEvaluator ev(template_space(), 3);
  Rng rng(8);
  std::vector<Point> pts;
  for (int i = 0; i < 37; ++i) pts.push_back(ev.space().sample(rng));
  const auto serial = evaluate_batch_serial(ev, pts, 10, 1, 1);
  for (int w : {1, 2, 4, 8}) {
    const auto par = evaluate_batch_parallel(ev, pts, 10, 1, 1, w);
    ASSERT_EQ(par.size(), serial.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      EXPECT_EQ(par[i].id, 10 + static_cast<int>(i));
      EXPECT_EQ(par[i].point, serial[i].point);
      EXPECT_EQ(par[i].score, serial[i].score);
    }
  }
}

TEST(Batch, ParallelRethrowsFirstFailureInTrialOrder) {
  const ToyEvaluator ev(unit_cube(1), 3);
  const std::vector<Point> pts{{0.1}, {0.2}, {2.0}, {0.3}, {-1.0}};
  try {
    evaluate_batch_parallel(ev, pts, 0, 1, 1, 4);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos) << e.what();
  }
}

// ---- random search ---------------------------------------------------------------------------------

TEST(RandomSearch, BudgetOneAndTrace) {
  const ToyEvaluator ev(template_space(), 1);
  EXPECT_EQ(random_search(ev, options(1, 1)).size(), 1u);
  const auto h = random_search(ev, options(120, 4));
  ASSERT_EQ(h.size(), 120u);
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(h[i].id, static_cast<int>(i));
    EXPECT_EQ(h[i].generation, -1);
    EXPECT_TRUE(ev.space().contains(h[i].point));
  }
  expect_nonincreasing(h);
  expect_same(h, random_search(ev, options(120, 4)));
}

// ---- GA --------------------------------------------------------------------------------------------

TEST(Ga, BudgetArithmeticTwoGenerations) {
  const ToyEvaluator ev(unit_cube(4), 1);
  GaOptions ga;
  ga.population = 2;
  ga.trajectories = 1;
  const auto h = ga_search(ev, options(4, 3), ga);
  ASSERT_EQ(h.size(), 4u);
  EXPECT_EQ(h[0].generation, 0);
  EXPECT_EQ(h[1].generation, 0);
  EXPECT_EQ(h[2].generation, 1);
  EXPECT_EQ(h[3].generation, 1);
}

TEST(Ga, RejectsBadSettings) {
  const ToyEvaluator ev(unit_cube(2), 1);
  GaOptions ga;
  ga.population = 1;
  EXPECT_THROW(ga_search(ev, options(4, 1), ga), std::invalid_argument);
  ga.population = 2;
  ga.trajectories = 0;
  EXPECT_THROW(ga_search(ev, options(4, 1), ga), std::invalid_argument);
}

TEST(Ga, MutationStaysInBounds) {
  const auto& s = template_space();
  GaOptions ga;
  ga.mutation_rate = 1.0;
  ga.mutation_sigma = 2.0;
  ga.categorical_rate = 1.0;
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    Point p = s.sample(rng);
    // Push headways against the bounds before mutating.
    for (std::size_t r = 0; r * SearchSpaceTemplate::kDimsPerRoute < 14; ++r) {
      p[r * SearchSpaceTemplate::kDimsPerRoute + 3] = (i % 2) ? 7200.0 : 0.0;
    }
    const auto m = ga_mutate(s, p, ga, rng);
    ASSERT_TRUE(s.contains(m));
    for (std::size_t r = 0; r < 2; ++r) {
      const double hw = m[r * SearchSpaceTemplate::kDimsPerRoute + 3];
      EXPECT_GE(hw, 0.0);
      EXPECT_LE(hw, 7200.0);
    }
  }
}

TEST(Ga, CrossoverCopiesWholeBlocks) {
  const auto& s = template_space();
  Rng rng(4);
  const auto a = s.sample(rng);
  const auto b = s.sample(rng);
  bool saw_a = false, saw_b = false;
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = ga_crossover(s, a, b, rng);
    std::vector<int> source(s.num_blocks(), -1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const int from = c[i] == a[i] ? 0 : 1;
      ASSERT_TRUE(c[i] == a[i] || c[i] == b[i]);
      if (a[i] == b[i]) continue;
      int& src = source[s[i].block];
      if (src < 0) src = from;
      EXPECT_EQ(src, from) << "block " << s[i].block;
      (from == 0 ? saw_a : saw_b) = true;
    }
  }
  EXPECT_TRUE(saw_a);
  EXPECT_TRUE(saw_b);
}

TEST(Ga, ReproducibleAndTraceNonincreasing) {
  const ToyEvaluator ev(template_space(), 2);
  auto o = options(90, 6);
  const auto a = ga_search(ev, o);
  o.workers = 4;
  const auto b = ga_search(ev, o);
  ASSERT_EQ(a.size(), 90u);
  expect_same(a, b);
  expect_nonincreasing(a);
  for (const auto& t : a.trials()) EXPECT_TRUE(ev.space().contains(t.point));
}

// ---- TPE -------------------------------------------------------------------------------------------

TEST(Tpe, WarmUpIsUniform) {
  const auto space = unit_cube(2);
  const auto h = with_scores({5, 4, 3, 2, 1}, 2);
  TpeOptions tpe;
  // With fewer trials than n_init the suggestion is exactly the next uniform draw.
  Rng a(3), b(3);
  EXPECT_EQ(tpe_suggest(h, space, tpe, a), space.sample(b));
}

TEST(Tpe, DegenerateHistoryIsUniform) {
  const auto space = unit_cube(2);
  const auto h = with_scores(std::vector<double>(30, 1.0), 2);
  TpeOptions tpe;
  Rng a(3), b(3);
  EXPECT_EQ(tpe_suggest(h, space, tpe, a), space.sample(b));
}

TEST(Tpe, ConstructedHistoryConcentratesSuggestions) {
  const auto space = unit_cube(3);
  Rng rng(21);
  History h;
  for (int i = 0; i < 200; ++i) {
    Trial t;
    t.id = i;
    const bool good = i % 5 == 0;  // 40 good trials, well above the gamma quantile
    t.point = space.sample(rng);
    if (good) t.point[0] = 0.3 + 0.02 * (uniform01(rng) - 0.5);
    t.score = good ? uniform01(rng) : 10 + uniform01(rng);
    h.append(t);
  }
  TpeOptions tpe;
  tpe.gamma = 0.15;
  int inside = 0;
  for (int i = 0; i < 100; ++i) {
    const auto p = tpe_suggest(h, space, tpe, rng);
    ASSERT_TRUE(space.contains(p));
    if (p[0] >= 0.25 && p[0] <= 0.35) ++inside;
  }
  EXPECT_GT(inside, 80);
}

TEST(Tpe, ParzenDensitiesIntegrateToOne) {
  std::vector<Dimension> dims{Dimension::continuous("a", -2, 3, 0), Dimension::categorical("c", 4, 1)};
  const SearchSpace space(dims);
  Rng rng(9);
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) {
    auto p = space.sample(rng);
    if (i < 4) p[0] = 2.95;  // kernels truncated at the upper bound
    pts.push_back(p);
  }
  std::vector<const Point*> ptrs;
  for (const auto& p : pts) ptrs.push_back(&p);
  const ParzenModel m(space, ptrs, 0.01);
  // Midpoint rule over the continuous dimension.
  const int n = 200000;
  const double dx = 5.0 / n;
  double total = 0;
  for (int i = 0; i < n; ++i) total += m.density(0, -2 + (i + 0.5) * dx) * dx;
  EXPECT_NEAR(total, 1.0, 1e-4);
  double cat = 0;
  for (int c = 0; c < 4; ++c) cat += m.density(1, c);
  EXPECT_NEAR(cat, 1.0, 1e-12);
  EXPECT_GE(m.bandwidth(0), 0.01 * 5.0);
  for (int i = 0; i < 200; ++i) EXPECT_TRUE(space.contains(m.sample(rng)));
}

TEST(Tpe, ReproducibleAcrossWorkersAndTraceNonincreasing) {
  const ToyEvaluator ev(template_space(), 2);
  auto o = options(60, 6);
  const auto a = tpe_search(ev, o);
  o.workers = 3;
  const auto b = tpe_search(ev, o);
  ASSERT_EQ(a.size(), 60u);
  expect_same(a, b);
  expect_nonincreasing(a);
}

TEST(Optimizers, GaAndTpeBeatRandomSearchOnToy) {
  int ga_wins = 0, tpe_wins = 0;
  for (uint64_t s = 1; s <= 5; ++s) {
    const ToyEvaluator ev(template_space(), 100 + s);
    const auto o = options(300, s);
    const double rs = random_search(ev, o).best().score;
    if (ga_search(ev, o).best().score < rs) ++ga_wins;
    if (tpe_search(ev, o).best().score < rs) ++tpe_wins;
  }
  EXPECT_GE(ga_wins, 4);
  EXPECT_GE(tpe_wins, 4);
}

// ---- finalize --------------------------------------------------------------------------------------

TEST(Finalize, RankedTrialsBreakTiesById) {
  const auto h = with_scores({2, 1, 2, 0, 1});
  EXPECT_EQ(ranked_trials(h), (std::vector<std::size_t>{3, 1, 4, 0, 2}));
}

TEST(Finalize, SingleRepMeanEqualsScore) {
  const SeededStub ev(unit_cube(2));
  const auto h = random_search(ev, options(10, 2));
  FinalizeOptions f;
  f.top_k = 3;
  f.reps = 1;
  f.iterations = 7;
  f.seed = 5;
  const auto out = finalize_top(h, ev, f);
  ASSERT_EQ(out.size(), 3u);
  for (const auto& r : out) {
    ASSERT_EQ(r.rep_scores.size(), 1u);
    EXPECT_EQ(r.mean, r.rep_scores[0]);
    EXPECT_EQ(r.rep_scores[0], ev.evaluate(r.point, mix_seed(5, 0), 7));
    EXPECT_EQ(r.spread, 0.0);
  }
}

TEST(Finalize, RepsSpanDistinctSeedsAndRankByMean) {
  const SeededStub ev(unit_cube(2));
  const auto h = random_search(ev, options(20, 3));
  FinalizeOptions f;
  f.top_k = 5;
  f.reps = 5;
  f.iterations = 2;
  f.workers = 2;
  const auto out = finalize_top(h, ev, f);
  ASSERT_EQ(out.size(), 5u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& r = out[i];
    std::vector<uint64_t> seeds = r.seeds;
    std::sort(seeds.begin(), seeds.end());
    EXPECT_EQ(std::unique(seeds.begin(), seeds.end()), seeds.end());
    const double mean = std::accumulate(r.rep_scores.begin(), r.rep_scores.end(), 0.0) / 5;
    EXPECT_NEAR(r.mean, mean, 1e-12);
    EXPECT_GE(r.mean, r.min);
    EXPECT_LE(r.mean, r.max);
    EXPECT_EQ(r.spread, r.max - r.min);
    EXPECT_GT(r.spread, 0.0);
    if (i > 0) EXPECT_LE(out[i - 1].mean, r.mean);
  }
}

TEST(Finalize, DeterministicStubHasZeroSpread) {
  const FixedStub ev(unit_cube(3));
  const auto h = random_search(ev, options(15, 1));
  FinalizeOptions f;
  f.top_k = 4;
  f.reps = 5;
  const auto out = finalize_top(h, ev, f);
  for (const auto& r : out) {
    EXPECT_EQ(r.spread, 0.0);
    EXPECT_EQ(r.mean, r.search_score);
  }
}

TEST(Finalize, CsvHasOneRowPerCandidate) {
  TempDir dir;
  const FixedStub ev(unit_cube(2));
  const auto out = finalize_top(random_search(ev, options(8, 1)), ev, FinalizeOptions{3, 2, 1, 1, 1});
  write_final_scores_csv(out, dir / "final.csv");
  const auto text = testing::read_file(dir / "final.csv");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.rfind("rank,trial_id,search_score,mean,min,max,spread,rep_scores", 0), 0u);
}

TEST(TopPercentile, SeventyOfFourteenHundred) {
  Rng rng(17);
  std::vector<double> scores(1400);
  for (auto& s : scores) s = std::floor(uniform01(rng) * 300);  // many ties
  const auto h = with_scores(scores, 2);
  const auto top = top_percentile_inputs(h, 0.05);
  ASSERT_EQ(top.trial_ids.size(), 70u);
  // Sort oracle: stable sort of ids by score.
  std::vector<int> ids(1400);
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return scores[a] < scores[b]; });
  ids.resize(70);
  EXPECT_EQ(top.trial_ids, ids);
  ASSERT_EQ(top.values.size(), 2u);
  for (std::size_t m = 0; m < 70; ++m) EXPECT_EQ(top.values[0][m], static_cast<double>(ids[m]));
}

TEST(TopPercentile, EdgeFractions) {
  const auto h = with_scores({4, 3, 2, 1});
  EXPECT_EQ(top_percentile_inputs(h, 1.0).trial_ids.size(), 4u);
  EXPECT_EQ(top_percentile_inputs(h, 0.01).trial_ids, (std::vector<int>{3}));
  EXPECT_THROW(top_percentile_inputs(h, 0.0), std::invalid_argument);
  EXPECT_THROW(top_percentile_inputs(h, 1.5), std::invalid_argument);
}

// ---- simulation evaluator --------------------------------------------------------------------------

NormStats unit_norms(const ObjectiveSpec& spec) {
  NormStats n;
  for (const auto& t : spec.terms) n.entries[t.kpi] = NormEntry{1.0, 1.0, 2, {}};
  return n;
}

TEST(SimulationEvaluator, ZerosScoreAsBau) {
  const auto& z = tiny_world();
  const auto spec = objective_preset("post_contest");
  const SimulationEvaluator ev(z, spec, unit_norms(spec));
  const auto zeros = ev.space().zeros();
  EXPECT_TRUE(ev.decode(zeros).empty());
  EXPECT_EQ(ev.evaluate(zeros, 2, 3), 0.0);
}

TEST(SimulationEvaluator, DeterministicAndInertSlot) {
  const auto& z = tiny_world();
  const auto spec = objective_preset("post_contest");
  const SimulationEvaluator ev(z, spec, unit_norms(spec));
  Rng rng(31);
  Point p = ev.space().sample(rng);
  const std::size_t slot = 2 * SearchSpaceTemplate::kDimsPerRoute + 2 * SearchSpaceTemplate::kDimsPerIncentive;
  p[slot + 3] = 0;  // last incentive slot has amount 0
  const double a = ev.evaluate(p, 4, 3);
  EXPECT_EQ(ev.evaluate(p, 4, 3), a);
  Point q = p;
  q[slot + 0] = 1;
  q[slot + 1] = 2;
  q[slot + 2] = 0;
  EXPECT_EQ(ev.evaluate(q, 4, 3), a);
  EXPECT_TRUE(validate(ev.decode(p), z).empty());
}

TEST(SimulationEvaluator, PresetBauMatchesComputed) {
  const auto& z = tiny_world();
  const auto spec = objective_preset("post_contest");
  SimulationEvaluator ev(z, spec, unit_norms(spec));
  const auto bau = bau_kpis(z, 5, 2);
  EXPECT_EQ(ev.bau(5, 2).values, bau.values);
  KpiVector fake = bau;
  fake[Kpi::kVmt] = bau[Kpi::kVmt] * 2;
  ev.set_bau(6, 2, fake);
  EXPECT_EQ(ev.bau(6, 2).values, fake.values);
}

}  // namespace
}  // namespace policysim
