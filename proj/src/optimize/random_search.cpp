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

#include "policysim/optimize/random_search.hpp"

#include <stdexcept>

namespace policysim {

History random_search(const TrialEvaluator& ev, const SearchOptions& opt) {
  if (opt.budget < 1) throw std::invalid_argument("random search budget must be >= 1");
  Rng rng(opt.seed);
  std::vector<Point> points;
  for (int i = 0; i < opt.budget; ++i) points.push_back(ev.space().sample(rng));
  History h;
  evaluate_into(h, ev, points, opt);
  return h;
}

}  // namespace policysim
