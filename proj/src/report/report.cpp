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

#include "policysim/report/report.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"
#include "policysim/optimize/finalize.hpp"
#include "policysim/optimize/history.hpp"
#include "policysim/report/svg.hpp"
#include "policysim/scenario/scenario.hpp"

namespace policysim {

namespace {

namespace fs = std::filesystem;

constexpr int kHours = 24;

std::vector<std::string> hour_labels() {
  std::vector<std::string> out;
  for (int h = 0; h < kHours; ++h) out.push_back(std::to_string(h));
  return out;
}

int hour_of(double t) { return std::clamp(static_cast<int>(t / 3600.0), 0, kHours - 1); }

void score_trace(const History& h, const fs::path& out, std::vector<fs::path>& files) {
  const auto best = h.best_so_far();
  Series trials{"trial score", {}, {}, true};
  Series running{"best so far", {}, {}, false};
  CsvWriter w(out / "score_trace.csv");
  w.row({"trial_id", "score", "best_so_far"});
  for (std::size_t i = 0; i < h.size(); ++i) {
    trials.x.push_back(h[i].id);
    trials.y.push_back(h[i].score);
    running.x.push_back(h[i].id);
    running.y.push_back(best[i]);
    w.row({std::to_string(h[i].id), format_double(h[i].score), format_double(best[i])});
  }
  write_line_chart(out / "score_trace.svg", {"Score by trial", "trial", "score"}, {trials, running});
  files.push_back(out / "score_trace.csv");
  files.push_back(out / "score_trace.svg");
}

void top_inputs(const History& h, const std::vector<std::string>& names, double p, const fs::path& out,
                std::vector<fs::path>& files) {
  const TopPercentile top = top_percentile_inputs(h, p);
  std::vector<Panel> panels;
  CsvWriter w(out / "top_inputs.csv");
  w.row({"dimension", "trial_id", "value"});
  for (std::size_t d = 0; d < names.size() && d < top.values.size(); ++d) {
    Panel panel{names[d], INFINITY, -INFINITY, top.values[d]};
    for (const auto& t : h.trials()) {
      panel.lower = std::min(panel.lower, t.point[d]);
      panel.upper = std::max(panel.upper, t.point[d]);
    }
    for (std::size_t m = 0; m < top.trial_ids.size(); ++m) {
      w.row({names[d], std::to_string(top.trial_ids[m]), format_double(top.values[d][m])});
    }
    panels.push_back(std::move(panel));
  }
  write_strip_panels(
      out / "top_inputs.svg",
      "Inputs of the best " + std::to_string(top.trial_ids.size()) + " of " + std::to_string(h.size()) + " trials",
      panels);
  files.push_back(out / "top_inputs.csv");
  files.push_back(out / "top_inputs.svg");
}

void mode_split(const fs::path& iterations_csv, const fs::path& out, std::vector<fs::path>& files) {
  const CsvTable t = CsvTable::read(iterations_csv);
  const std::array<std::pair<const char*, const char*>, kNumTripModes> cols{{{"walk", "walk_legs"},
                                                                             {"car", "car_legs"},
                                                                             {"walk_transit", "walk_transit_legs"},
                                                                             {"ride_hail", "ride_hail_legs"}}};
  std::vector<Series> series;
  for (const auto& [label, col] : cols) series.push_back(Series{label, {}, {}, false});
  CsvWriter w(out / "mode_split.csv");
  w.row({"iteration", "walk", "car", "walk_transit", "ride_hail"});
  for (std::size_t r = 0; r < t.size(); ++r) {
    const double it = static_cast<double>(t.integer(r, "iteration"));
    std::vector<std::string> row{std::to_string(t.integer(r, "iteration"))};
    for (std::size_t m = 0; m < cols.size(); ++m) {
      const double v = t.real(r, cols[m].second);
      series[m].x.push_back(it);
      series[m].y.push_back(v);
      row.push_back(format_double(v));
    }
    w.row(row);
  }
  write_line_chart(out / "mode_split.svg", {"Mode split by iteration", "iteration", "legs"}, series);
  files.push_back(out / "mode_split.csv");
  files.push_back(out / "mode_split.svg");
}

void event_plots(const fs::path& events_csv, const fs::path& out, std::vector<fs::path>& files) {
  const CsvTable t = CsvTable::read(events_csv);
  std::map<std::string, std::vector<double>> starts;
  std::map<std::string, std::vector<double>> occupied_miles;
  std::vector<double> empty_miles(kHours, 0.0);
  for (std::size_t r = 0; r < t.size(); ++r) {
    const std::string type = t.str(r, "type");
    if (type == "actstart") {
      auto& v = starts[t.str(r, "activity")];
      v.resize(kHours, 0.0);
      v[hour_of(t.real(r, "time"))] += 1;
    } else if (type == "PathTraversal" && t.str(r, "mode") == "bus") {
      const int hour = hour_of(t.real(r, "enter_time"));
      const double miles = t.real(r, "distance_m") / kMetersPerMile;
      if (t.integer(r, "occupancy") > 0) {
        auto& v = occupied_miles[t.str(r, "vehicle_type")];
        v.resize(kHours, 0.0);
        v[hour] += miles;
      } else {
        empty_miles[hour] += miles;
      }
    }
  }

  std::vector<Series> start_series;
  CsvWriter ws(out / "activity_starts.csv");
  ws.row({"hour", "activity", "starts"});
  for (const auto& [activity, counts] : starts) {
    start_series.push_back(Series{activity, {}, counts, false});
    for (int h = 0; h < kHours; ++h) ws.row({std::to_string(h), activity, format_double(counts[h])});
  }
  write_bar_chart(out / "activity_starts.svg", {"Activity start times", "hour of day", "activities started"},
                  hour_labels(), start_series);

  std::vector<Series> vmt_series;
  CsvWriter wv(out / "bus_vmt.csv");
  wv.row({"hour", "vehicle_type", "occupied", "miles"});
  for (const auto& [type, miles] : occupied_miles) {
    vmt_series.push_back(Series{type + " occupied", {}, miles, false});
    for (int h = 0; h < kHours; ++h) wv.row({std::to_string(h), type, "1", format_double(miles[h])});
  }
  vmt_series.push_back(Series{"empty", {}, empty_miles, false});
  for (int h = 0; h < kHours; ++h) wv.row({std::to_string(h), "all", "0", format_double(empty_miles[h])});
  write_bar_chart(out / "bus_vmt.svg", {"Bus VMT by hour", "hour of day", "miles"}, hour_labels(), vmt_series);

  files.push_back(out / "activity_starts.csv");
  files.push_back(out / "activity_starts.svg");
  files.push_back(out / "bus_vmt.csv");
  files.push_back(out / "bus_vmt.svg");
}

}  // namespace

std::vector<fs::path> write_report(const fs::path& run_dir, const fs::path& out_dir, const ReportOptions& opt) {
  const bool has_history = fs::exists(run_dir / "history.csv");
  const bool has_iterations = fs::exists(run_dir / "iterations.csv");
  const bool has_events = fs::exists(run_dir / "events.csv");
  if (!has_history && !has_iterations && !has_events) {
    throw LoadError(run_dir.string(), -1, "REPORT_INPUT", "no history.csv, iterations.csv or events.csv found");
  }
  fs::create_directories(out_dir);
  std::vector<fs::path> files;
  if (has_history) {
    std::vector<std::string> names;
    const History h = read_history_csv(run_dir / "history.csv", &names);
    if (!h.empty()) {
      score_trace(h, out_dir, files);
      top_inputs(h, names, opt.top_fraction, out_dir, files);
    }
  }
  if (has_iterations) mode_split(run_dir / "iterations.csv", out_dir, files);
  if (has_events) event_plots(run_dir / "events.csv", out_dir, files);
  return files;
}

}  // namespace policysim
