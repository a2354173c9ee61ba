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
#include <filesystem>
#include <vector>

#include "policysim/kpi/kpi.hpp"
#include "policysim/scenario/scenario.hpp"
#include "policysim/scoring/objective.hpp"
#include "policysim/scoring/score.hpp"
#include "policysim/udi/decision.hpp"

namespace policysim {

/// run_simulation followed by build_tables and compute_kpis.
KpiVector simulate_kpis(const DecisionVector& d, const Scenario& z, uint64_t seed, int iterations);

/// KPIs of the empty decision vector.
KpiVector bau_kpis(const Scenario& z, uint64_t seed, int iterations);

/// mu and unbiased sigma per objective term from transformed-ratio samples (samples[s][term]).
/// Throws RuntimeError when n < 2 or a term's sample has zero spread.
NormStats norms_from_samples(const ObjectiveSpec& spec, const std::vector<std::vector<double>>& samples);

struct CalibrationOptions {
  int samples = 50;
  uint64_t seed = 1;
  int iterations = 40;
  bool include_bau = true;  // sample 0 is the all-zeros template point
  int workers = 1;
  int incentive_slots = 3;
};

/// Samples template points, simulates each with the same seed as the BAU run, and fits
/// mu and sigma on the objective's transformed ratios.
NormStats calibrate_norms(const Scenario& z, const ObjectiveSpec& spec, const KpiVector& bau,
                          const CalibrationOptions& opt);

/// norms.csv: kpi,mu,sigma,n
void write_norms_csv(const NormStats& n, const std::filesystem::path& path);
NormStats read_norms_csv(const std::filesystem::path& path);

}  // namespace policysim
