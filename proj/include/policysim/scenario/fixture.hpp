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

#include <cstdint>

#include "policysim/scenario/scenario.hpp"

namespace policysim {

/// Synthetic "Sioux Micro" world: a grid_dim x grid_dim Manhattan grid with 800 m blocks,
/// two out-and-back bus routes (1340 along the middle row, 1341 along the middle column) run by
/// BUS-SMALL-HD with 40 min peak and 30-40 min off-peak headways,
/// the four bus types of the pilot fleet, and a synthetic population.
///
/// Distributions (piecewise uniform):
///   age     [0,15] 19%  [16,17] 3%  [18,34] 26%  [35,64] 38%  [65,90] 14%
///           household heads are drawn from the adult bins only
///   income  [10k,25k) 18%  [25k,50k) 27%  [50k,100k) 33%  [100k,200k) 22%   (per household)
///   household size 1:30% 2:35% 3:15% 4:20%
///   workers: 75% of ages 18-64, 15% of 65+; plan Home-Work-Secondary-Home
///   others:  plan Home-Secondary-Home
///   worker   home end U[07:15, 08:15], work end +U[8h, 9h], secondary end +U[0.5h, 1.5h]
///   other    home end U[09:00, 15:00], secondary end +U[0.5h, 2h]
///   work locations weighted (1 + grid distance to centre)^-3; secondary locations uniform
Scenario generate_sioux_micro(uint64_t seed, int n_agents, int grid_dim);

inline constexpr int64_t kFixtureRouteRow = 1340;
inline constexpr int64_t kFixtureRouteColumn = 1341;

}  // namespace policysim
