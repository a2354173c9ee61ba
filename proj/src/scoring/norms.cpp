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

#include "policysim/scoring/norms.hpp"

#include <cmath>
#include <exception>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"
#include "policysim/kpi/tables.hpp"
#include "policysim/sim/simulation.hpp"
#include "policysim/udi/template.hpp"

namespace policysim {

KpiVector simulate_kpis(const DecisionVector& d, const Scenario& z, uint64_t seed, int iterations) {
  const SimOutputs out = run_simulation(d, z, seed, iterations);
  const SimTables t = build_tables(out.events, z);
  return compute_kpis(t, d, z);
}

KpiVector bau_kpis(const Scenario& z, uint64_t seed, int iterations) {
  return simulate_kpis(DecisionVector{}, z, seed, iterations);
}

NormStats norms_from_samples(const ObjectiveSpec& spec, const std::vector<std::vector<double>>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw RuntimeError("normalization needs at least 2 samples, got " + std::to_string(n));
  NormStats out;
  for (std::size_t j = 0; j < spec.terms.size(); ++j) {
    NormEntry e;
    e.n = n;
    double sum = 0;
    for (const auto& s : samples) {
      e.samples.push_back(s.at(j));
      sum += s[j];
    }
    e.mu = sum / n;
    double ss = 0;
    for (double v : e.samples) ss += (v - e.mu) * (v - e.mu);
    e.sigma = std::sqrt(ss / (n - 1));
    if (!(e.sigma > 0)) {
      throw RuntimeError(std::string("KPI ") + kpi_name(spec.terms[j].kpi) +
                         ": degenerate normalization sample (sigma = 0)");
    }
    out.entries[spec.terms[j].kpi] = std::move(e);
  }
  return out;
}

NormStats calibrate_norms(const Scenario& z, const ObjectiveSpec& spec, const KpiVector& bau,
                          const CalibrationOptions& opt) {
  if (opt.samples < 2) throw RuntimeError("calibration needs at least 2 samples");
  const SearchSpaceTemplate tmpl(z, opt.incentive_slots);
  Rng rng(opt.seed);
  std::vector<Point> points;
  for (int s = 0; s < opt.samples; ++s) {
    points.push_back(s == 0 && opt.include_bau ? tmpl.space().zeros() : tmpl.space().sample(rng));
  }

  std::vector<std::vector<double>> samples(points.size());
  std::vector<std::exception_ptr> errors(points.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(opt.workers > 0 ? opt.workers : 1)
  for (int s = 0; s < static_cast<int>(points.size()); ++s) {
    try {
      const KpiVector k = simulate_kpis(tmpl.decode(points[s]), z, opt.seed, opt.iterations);
      for (const auto& term : spec.terms) {
        samples[s].push_back(transformed_ratio(k[term.kpi], bau[term.kpi], term, spec.aggregation));
      }
    } catch (...) {
      errors[s] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return norms_from_samples(spec, samples);
}

void write_norms_csv(const NormStats& n, const std::filesystem::path& path) {
  CsvWriter w(path);
  w.row({"kpi", "mu", "sigma", "n"});
  for (const auto& [k, e] : n.entries) {
    w.row({kpi_name(k), format_double(e.mu), format_double(e.sigma), std::to_string(e.n)});
  }
}

NormStats read_norms_csv(const std::filesystem::path& path) {
  const CsvTable t = CsvTable::read(path);
  t.require_header({"kpi", "mu", "sigma", "n"});
  NormStats out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    const auto k = parse_kpi(t.str(r, "kpi"));
    if (!k) throw LoadError(t.name(), t.line(r), "NORMS_KPI", "unknown KPI '" + t.str(r, "kpi") + "'");
    NormEntry e;
    e.mu = t.real(r, "mu");
    e.sigma = t.real(r, "sigma");
    e.n = static_cast<int>(t.integer(r, "n"));
    if (!(e.sigma > 0)) throw LoadError(t.name(), t.line(r), "NORMS_SIGMA", "sigma must be > 0");
    if (e.n < 2) throw LoadError(t.name(), t.line(r), "NORMS_N", "n must be >= 2");
    if (out.entries.count(*k)) throw LoadError(t.name(), t.line(r), "NORMS_DUPLICATE", "duplicate KPI");
    out.entries[*k] = e;
  }
  return out;
}

}  // namespace policysim
