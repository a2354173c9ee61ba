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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "policysim/kpi/kpi.hpp"
#include "policysim/scoring/objective.hpp"

namespace policysim {

struct NormEntry {
  double mu = 0;
  double sigma = 1;
  int n = 0;
  std::vector<double> samples;  // transformed ratios
};

struct NormStats {
  std::map<Kpi, NormEntry> entries;

  const NormEntry& at(Kpi k) const;
};

/// Ratio K/K_bau with the term's clamp applied.
double clamped_ratio(double k, double k_bau, const ObjectiveTerm& term);
/// The quantity normalized by mu and sigma: ratio^alpha for kExponent, ratio for kCoefficient.
double transformed_ratio(double k, double k_bau, const ObjectiveTerm& term, Aggregation agg);

/// One score component. Throws RuntimeError naming the KPI on a zero BAU value, a zero
/// ratio under alpha = -1 exponent form, or sigma <= 0.
double component_z(double k, double k_bau, double mu, double sigma, const ObjectiveTerm& term, Aggregation agg);

struct ScoreRow {
  Kpi kpi;
  double raw;
  double bau;
  double ratio;  // unclamped K/K_bau
  double z;
};

struct ScoreReport {
  std::string objective;
  std::vector<ScoreRow> rows;
  double score = 0;  // sum of rows' z
};

ScoreReport composite_score(const KpiVector& k, const KpiVector& bau, const ObjectiveSpec& spec,
                            const NormStats& norms);

/// score_report.csv: kpi,raw,bau,ratio,z with a final "composite" row holding the score in z.
void write_score_report_csv(const ScoreReport& r, const std::filesystem::path& path);

}  // namespace policysim
