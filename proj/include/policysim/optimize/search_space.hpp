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

#include <string>
#include <vector>

#include "policysim/common/rng.hpp"

namespace policysim {

using Point = std::vector<double>;

/// One coordinate of a search space. Categorical values are stored as 0..categories-1.
struct Dimension {
  enum class Kind { kContinuous, kCategorical };

  std::string name;
  Kind kind = Kind::kContinuous;
  double lower = 0;
  double upper = 1;
  int categories = 0;
  int block = 0;  // crossover unit

  bool categorical() const { return kind == Kind::kCategorical; }
  double range() const { return upper - lower; }

  static Dimension continuous(std::string name, double lower, double upper, int block);
  static Dimension categorical(std::string name, int categories, int block);
};

class SearchSpace {
 public:
  SearchSpace() = default;
  explicit SearchSpace(std::vector<Dimension> dims);

  std::size_t size() const { return dims_.size(); }
  const Dimension& operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<Dimension>& dimensions() const { return dims_; }
  int num_blocks() const { return num_blocks_; }

  Point sample(Rng& rng) const;
  Point zeros() const { return Point(dims_.size(), 0.0); }
  /// Clamps continuous coordinates and rounds/clamps categorical ones.
  Point clip(Point p) const;
  bool contains(const Point& p) const;

 private:
  std::vector<Dimension> dims_;
  int num_blocks_ = 0;
};

}  // namespace policysim
