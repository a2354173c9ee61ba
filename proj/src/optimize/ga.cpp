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

#include "policysim/optimize/ga.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace policysim {

namespace {

struct Individual {
  Point point;
  double score;
};

struct Trajectory {
  std::vector<Individual> population;
  Individual best{{}, 0};
  bool has_best = false;
  int generation = 0;

  void observe(const Individual& ind) {
    if (!has_best || ind.score < best.score) {
      best = ind;
      has_best = true;
    }
  }
};

const Individual& tournament(const std::vector<Individual>& pop, int k, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  const Individual* winner = &pop[pick(rng)];
  for (int i = 1; i < k; ++i) {
    const Individual& c = pop[pick(rng)];
    if (c.score < winner->score) winner = &c;
  }
  return *winner;
}

}  // namespace

Point ga_mutate(const SearchSpace& space, Point p, const GaOptions& ga, Rng& rng) {
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Dimension& d = space[i];
    if (d.categorical()) {
      if (uniform01(rng) < ga.categorical_rate) {
        p[i] = static_cast<double>(std::uniform_int_distribution<int>(0, d.categories - 1)(rng));
      }
    } else if (uniform01(rng) < ga.mutation_rate) {
      p[i] += std::normal_distribution<double>(0.0, ga.mutation_sigma * d.range())(rng);
    }
  }
  return space.clip(std::move(p));
}

Point ga_crossover(const SearchSpace& space, const Point& a, const Point& b, Rng& rng) {
  std::vector<bool> from_b(space.num_blocks());
  for (int k = 0; k < space.num_blocks(); ++k) from_b[k] = uniform01(rng) < 0.5;
  Point c = a;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (from_b[space[i].block]) c[i] = b[i];
  }
  return c;
}

History ga_search(const TrialEvaluator& ev, const SearchOptions& opt, const GaOptions& ga) {
  if (ga.population < 2) throw std::invalid_argument("GA population must be >= 2");
  if (ga.trajectories < 1) throw std::invalid_argument("GA needs at least one trajectory");
  if (opt.budget < 1) throw std::invalid_argument("GA budget must be >= 1");
  const SearchSpace& space = ev.space();
  const int P = ga.population;
  Rng rng(opt.seed);
  History h;
  auto remaining = [&] { return opt.budget - static_cast<int>(h.size()); };

  std::vector<Point> pool;
  const int pool_size = std::max(P, ga.pool_factor * P);
  for (int i = 0; i < pool_size; ++i) pool.push_back(space.sample(rng));
  std::vector<int> pool_trial(pool.size(), -1);

  std::vector<Trajectory> trajectories(ga.trajectories);
  std::vector<std::vector<int>> members(ga.trajectories);
  for (auto& m : members) {
    std::vector<int> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    m.assign(idx.begin(), idx.begin() + P);
  }

  // Generation 0: evaluate the pool members each trajectory draws, once each.
  for (int t = 0; t < ga.trajectories && remaining() > 0; ++t) {
    std::vector<int> fresh;
    for (int m : members[t]) {
      if (pool_trial[m] < 0 && std::find(fresh.begin(), fresh.end(), m) == fresh.end()) fresh.push_back(m);
    }
    if (static_cast<int>(fresh.size()) > remaining()) fresh.resize(remaining());
    std::vector<Point> pts;
    for (int m : fresh) pts.push_back(pool[m]);
    auto trials = evaluate_batch(ev, pts, h.next_id(), opt.sim_seed, opt.iterations, opt.workers);
    for (std::size_t i = 0; i < trials.size(); ++i) {
      pool_trial[fresh[i]] = trials[i].id;
      trials[i].generation = 0;
      h.append(std::move(trials[i]));
    }
    for (int m : members[t]) {
      if (pool_trial[m] < 0) continue;
      Individual ind{pool[m], h[pool_trial[m]].score};
      trajectories[t].population.push_back(ind);
      trajectories[t].observe(ind);
    }
  }

  while (remaining() > 0) {
    for (int t = 0; t < ga.trajectories && remaining() > 0; ++t) {
      Trajectory& tr = trajectories[t];
      if (tr.population.empty()) continue;
      const int n = std::min(P, remaining());
      std::vector<Point> children;
      for (int i = 0; i < n; ++i) {
        const Individual& a = tournament(tr.population, ga.tournament, rng);
        const Individual& b = tournament(tr.population, ga.tournament, rng);
        children.push_back(ga_mutate(space, ga_crossover(space, a.point, b.point, rng), ga, rng));
      }
      ++tr.generation;
      auto trials = evaluate_batch(ev, children, h.next_id(), opt.sim_seed, opt.iterations, opt.workers);
      std::vector<Individual> next;
      for (auto& trial : trials) {
        next.push_back(Individual{trial.point, trial.score});
        trial.generation = tr.generation;
        h.append(std::move(trial));
      }
      auto worst = std::max_element(next.begin(), next.end(),
                                    [](const Individual& x, const Individual& y) { return x.score < y.score; });
      if (tr.best.score < worst->score) *worst = tr.best;
      for (const auto& ind : next) tr.observe(ind);
      tr.population = std::move(next);
    }
  }
  return h;
}

}  // namespace policysim
