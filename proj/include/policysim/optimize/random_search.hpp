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

#include "policysim/optimize/batch.hpp"

namespace policysim {

/// Evaluates opt.budget i.i.d. uniform points of the evaluator's space.
History random_search(const TrialEvaluator& ev, const SearchOptions& opt);

}  // namespace policysim
