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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "policysim/kpi/kpi.hpp"

namespace policysim {

/// kExponent: ((K/K_bau)^alpha - mu) / sigma.  kCoefficient: alpha * (K/K_bau - mu) / sigma.
enum class Aggregation { kExponent, kCoefficient };

struct ObjectiveTerm {
  Kpi kpi;
  int alpha = 1;                      // -1 when an increase is desirable
  std::optional<double> clamp_floor;  // applied to K/K_bau
  std::optional<double> clamp_ceil;
};

struct ObjectiveSpec {
  std::string name;
  Aggregation aggregation = Aggregation::kExponent;
  std::vector<ObjectiveTerm> terms;
};

inline constexpr double kFinancialClampFloor = 0.05;
inline constexpr double kFinancialClampCeil = 20.0;

/// "contest", "post_contest" or "new_kpis" (case-insensitive; "PostContest" style also accepted).
ObjectiveSpec objective_preset(std::string_view name);

/// Custom objective: CSV with header kpi,alpha,clamp_floor,clamp_ceil (blank clamp = none).
ObjectiveSpec load_objective_csv(const std::filesystem::path& path);

/// Resolves a CLI objective argument: a preset name or custom:<path>.
ObjectiveSpec resolve_objective(std::string_view arg);

}  // namespace policysim
