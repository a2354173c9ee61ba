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

#include "policysim/sim/convergence.hpp"

#include <algorithm>
#include <cmath>

namespace policysim {

bool check_convergence(std::span<const double> mean_scores, int window, double tol) {
  if (window < 1 || mean_scores.size() < static_cast<std::size_t>(window) + 1) return false;
  const std::size_t n = mean_scores.size();
  for (std::size_t t = n - window; t < n; ++t) {
    const double prev = mean_scores[t - 1];
    const double change = std::abs(mean_scores[t] - prev) / std::max(std::abs(prev), 1e-12);
    if (!(change < tol)) return false;
  }
  return true;
}

}  // namespace policysim
