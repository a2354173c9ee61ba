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

#include "policysim/optimize/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace policysim {

Dimension Dimension::continuous(std::string name, double lower, double upper, int block) {
  if (!(lower <= upper)) throw std::invalid_argument("dimension " + name + ": lower > upper");
  return Dimension{std::move(name), Kind::kContinuous, lower, upper, 0, block};
}

Dimension Dimension::categorical(std::string name, int categories, int block) {
  if (categories < 1) throw std::invalid_argument("dimension " + name + ": needs at least one category");
  return Dimension{std::move(name), Kind::kCategorical, 0, static_cast<double>(categories - 1), categories, block};
}

SearchSpace::SearchSpace(std::vector<Dimension> dims) : dims_(std::move(dims)) {
  for (const auto& d : dims_) {
    if (d.block < 0) throw std::invalid_argument("negative block index");
    num_blocks_ = std::max(num_blocks_, d.block + 1);
  }
}

Point SearchSpace::sample(Rng& rng) const {
  Point p(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const auto& d = dims_[i];
    if (d.categorical()) {
      p[i] = static_cast<double>(std::uniform_int_distribution<int>(0, d.categories - 1)(rng));
    } else {
      p[i] = d.lower + d.range() * uniform01(rng);
    }
  }
  return p;
}

Point SearchSpace::clip(Point p) const {
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const auto& d = dims_[i];
    if (d.categorical()) p[i] = std::round(p[i]);
    p[i] = std::clamp(p[i], d.lower, d.upper);
  }
  return p;
}

bool SearchSpace::contains(const Point& p) const {
  if (p.size() != dims_.size()) return false;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const auto& d = dims_[i];
    if (!(p[i] >= d.lower && p[i] <= d.upper)) return false;
    if (d.categorical() && p[i] != std::round(p[i])) return false;
  }
  return true;
}

}  // namespace policysim
