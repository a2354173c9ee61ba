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

#include "policysim/scoring/score.hpp"

#include <algorithm>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"

namespace policysim {

const NormEntry& NormStats::at(Kpi k) const {
  auto it = entries.find(k);
  if (it == entries.end()) throw RuntimeError(std::string("no normalization statistics for KPI ") + kpi_name(k));
  return it->second;
}

double clamped_ratio(double k, double k_bau, const ObjectiveTerm& term) {
  if (k_bau == 0) throw RuntimeError(std::string("KPI ") + kpi_name(term.kpi) + ": BAU value is zero");
  double r = k / k_bau;
  if (term.clamp_floor) r = std::max(r, *term.clamp_floor);
  if (term.clamp_ceil) r = std::min(r, *term.clamp_ceil);
  return r;
}

double transformed_ratio(double k, double k_bau, const ObjectiveTerm& term, Aggregation agg) {
  const double r = clamped_ratio(k, k_bau, term);
  if (agg == Aggregation::kCoefficient || term.alpha == 1) return r;
  if (r == 0) throw RuntimeError(std::string("KPI ") + kpi_name(term.kpi) + ": zero value under alpha = -1");
  return 1.0 / r;
}

double component_z(double k, double k_bau, double mu, double sigma, const ObjectiveTerm& term, Aggregation agg) {
  if (!(sigma > 0)) throw RuntimeError(std::string("KPI ") + kpi_name(term.kpi) + ": sigma must be > 0");
  const double t = transformed_ratio(k, k_bau, term, agg);
  const double z = (t - mu) / sigma;
  return agg == Aggregation::kCoefficient ? term.alpha * z : z;
}

ScoreReport composite_score(const KpiVector& k, const KpiVector& bau, const ObjectiveSpec& spec,
                            const NormStats& norms) {
  ScoreReport rep;
  rep.objective = spec.name;
  for (const auto& term : spec.terms) {
    const auto& n = norms.at(term.kpi);
    const double raw = k[term.kpi];
    const double base = bau[term.kpi];
    const double z = component_z(raw, base, n.mu, n.sigma, term, spec.aggregation);
    rep.rows.push_back(ScoreRow{term.kpi, raw, base, raw / base, z});
    rep.score += z;
  }
  return rep;
}

void write_score_report_csv(const ScoreReport& r, const std::filesystem::path& path) {
  CsvWriter w(path);
  w.row({"kpi", "raw", "bau", "ratio", "z"});
  for (const auto& row : r.rows) {
    w.row({kpi_name(row.kpi), format_double(row.raw), format_double(row.bau), format_double(row.ratio),
           format_double(row.z)});
  }
  w.row({"composite", "", "", "", format_double(r.score)});
}

}  // namespace policysim
