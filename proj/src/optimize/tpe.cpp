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

#include "policysim/optimize/tpe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace policysim {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / kSqrt2Pi; }

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1));
}

}  // namespace

ParzenModel::ParzenModel(const SearchSpace& space, const std::vector<const Point*>& points, double min_bandwidth)
    : space_(&space),
      centres_(space.size()),
      bandwidth_(space.size(), 0.0),
      mass_(space.size()),
      frequency_(space.size()) {
  if (points.empty()) throw std::invalid_argument("Parzen model needs at least one point");
  const double n = static_cast<double>(points.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Dimension& d = space[i];
    if (d.categorical()) {
      frequency_[i].assign(d.categories, 1.0);
      for (const Point* p : points) frequency_[i][static_cast<int>((*p)[i])] += 1.0;
      for (double& f : frequency_[i]) f /= n + d.categories;
      continue;
    }
    for (const Point* p : points) centres_[i].push_back((*p)[i]);
    const double scott = 1.06 * sample_std(centres_[i]) * std::pow(n, -0.2);
    bandwidth_[i] = std::max({scott, min_bandwidth * d.range(), 1e-12});
    for (double c : centres_[i]) {
      mass_[i].push_back(normal_cdf((d.upper - c) / bandwidth_[i]) - normal_cdf((d.lower - c) / bandwidth_[i]));
    }
  }
}

double ParzenModel::density(std::size_t dim, double x) const {
  const Dimension& d = (*space_)[dim];
  if (d.categorical()) return frequency_[dim][static_cast<int>(std::lround(x))];
  const double h = bandwidth_[dim];
  const double prior = d.range() > 0 ? 1.0 / d.range() : 1.0;
  double sum = prior;
  for (std::size_t k = 0; k < centres_[dim].size(); ++k) {
    sum += normal_pdf((x - centres_[dim][k]) / h) / (h * mass_[dim][k]);
  }
  return sum / (centres_[dim].size() + 1);
}

double ParzenModel::log_density(const Point& p) const {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::log(density(i, p[i]));
  return s;
}

Point ParzenModel::sample(Rng& rng) const {
  Point p(space_->size());
  for (std::size_t i = 0; i < space_->size(); ++i) {
    const Dimension& d = (*space_)[i];
    if (d.categorical()) {
      std::discrete_distribution<int> pick(frequency_[i].begin(), frequency_[i].end());
      p[i] = static_cast<double>(pick(rng));
      continue;
    }
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, centres_[i].size())(rng);
    if (k == centres_[i].size()) {
      p[i] = d.lower + d.range() * uniform01(rng);
      continue;
    }
    // Truncated normal: invert the CDF by bisection.
    const double h = bandwidth_[i];
    const double a = normal_cdf((d.lower - centres_[i][k]) / h);
    const double b = normal_cdf((d.upper - centres_[i][k]) / h);
    const double u = a + (b - a) * uniform01(rng);
    double x = centres_[i][k];
    if (u > 0 && u < 1) {
      double lo = d.lower, hi = d.upper;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf((mid - centres_[i][k]) / h) < u)
          lo = mid;
        else
          hi = mid;
      }
      x = 0.5 * (lo + hi);
    }
    p[i] = std::clamp(x, d.lower, d.upper);
  }
  return p;
}

Point tpe_suggest(const History& h, const SearchSpace& space, const TpeOptions& tpe, Rng& rng) {
  if (!(tpe.gamma > 0 && tpe.gamma < 1)) throw std::invalid_argument("TPE gamma must be in (0, 1)");
  const std::size_t n = h.size();
  if (static_cast<int>(n) < std::max(tpe.n_init, 2)) return space.sample(rng);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a].score < h[b].score; });
  if (h[order.front()].score == h[order.back()].score) return space.sample(rng);

  const std::size_t n_good = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(tpe.gamma * n)), 1, n - 1);
  std::vector<const Point*> good, bad;
  for (std::size_t r = 0; r < n; ++r) (r < n_good ? good : bad).push_back(&h[order[r]].point);
  const ParzenModel l(space, good, tpe.min_bandwidth);
  const ParzenModel g(space, bad, tpe.min_bandwidth);

  Point best;
  double best_acq = -INFINITY;
  for (int c = 0; c < std::max(1, tpe.n_candidates); ++c) {
    Point x = l.sample(rng);
    const double acq = l.log_density(x) - g.log_density(x);
    if (acq > best_acq) {
      best_acq = acq;
      best = std::move(x);
    }
  }
  return best;
}

History tpe_search(const TrialEvaluator& ev, const SearchOptions& opt, const TpeOptions& tpe) {
  if (opt.budget < 1) throw std::invalid_argument("TPE budget must be >= 1");
  Rng rng(opt.seed);
  History h;
  while (static_cast<int>(h.size()) < opt.budget) {
    const int remaining = opt.budget - static_cast<int>(h.size());
    const bool warmup = static_cast<int>(h.size()) < tpe.n_init;
    const int batch =
        std::min(remaining, warmup ? tpe.n_init - static_cast<int>(h.size()) : std::max(1, tpe.batch_size));
    std::vector<Point> points;
    for (int i = 0; i < batch; ++i) points.push_back(tpe_suggest(h, ev.space(), tpe, rng));
    evaluate_into(h, ev, points, opt);
  }
  return h;
}

}  // namespace policysim
