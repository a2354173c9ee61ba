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

#include "policysim/udi/udi_io.hpp"

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"

namespace fs = std::filesystem;

namespace policysim {

namespace {

const std::vector<std::string> kFrequencyHeader{"route_id", "start_time", "end_time", "headway_secs", "exact_times"};
const std::vector<std::string> kFleetHeader{"route_id", "vehicle_type_id"};
const std::vector<std::string> kFaresHeader{"route_id", "age_min", "age_max", "fare"};
const std::vector<std::string> kIncentivesHeader{"mode", "age_min", "age_max", "income_min", "income_max", "amount"};

CsvTable open(const fs::path& dir, const char* name, const std::vector<std::string>& header) {
  const auto path = dir / name;
  if (!fs::exists(path)) throw LoadError(name, -1, "FILE_MISSING", "required file not found in " + dir.string());
  auto t = CsvTable::read(path);
  t.require_header(header);
  return t;
}

int as_int(const CsvTable& t, std::size_t r, const char* col) {
  const auto v = t.integer(r, col);
  if (v < INT32_MIN || v > INT32_MAX)
    throw LoadError(t.name(), t.line(r), "CSV_TYPE", std::string(col) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

DecisionVector load_udi(const fs::path& dir) {
  DecisionVector d;
  const auto freq = open(dir, "FrequencyAdjustment.csv", kFrequencyHeader);
  for (std::size_t r = 0; r < freq.size(); ++r) {
    d.frequency.push_back({freq.integer(r, "route_id"), as_int(freq, r, "start_time"), as_int(freq, r, "end_time"),
                           as_int(freq, r, "headway_secs"), as_int(freq, r, "exact_times")});
  }
  const auto fleet = open(dir, "VehicleFleetMix.csv", kFleetHeader);
  for (std::size_t r = 0; r < fleet.size(); ++r) {
    d.fleet.push_back({fleet.integer(r, "route_id"), fleet.str(r, "vehicle_type_id")});
  }
  const auto fares = open(dir, "MassTransitFares.csv", kFaresHeader);
  for (std::size_t r = 0; r < fares.size(); ++r) {
    d.fares.push_back({fares.integer(r, "route_id"), as_int(fares, r, "age_min"), as_int(fares, r, "age_max"),
                       fares.real(r, "fare")});
  }
  const auto inc = open(dir, "ModeIncentives.csv", kIncentivesHeader);
  for (std::size_t r = 0; r < inc.size(); ++r) {
    const auto mode = parse_incentive_mode(inc.str(r, "mode"));
    if (!mode) {
      throw LoadError(inc.name(), inc.line(r), "UDI_MODE", "unknown incentive mode '" + inc.str(r, "mode") + "'");
    }
    d.incentives.push_back({*mode, as_int(inc, r, "age_min"), as_int(inc, r, "age_max"), inc.real(r, "income_min"),
                            inc.real(r, "income_max"), inc.real(r, "amount")});
  }
  return d;
}

void save_udi(const DecisionVector& d, const fs::path& dir) {
  fs::create_directories(dir);
  {
    CsvWriter w(dir / "FrequencyAdjustment.csv");
    w.row(kFrequencyHeader);
    for (const auto& f : d.frequency) {
      w.row({std::to_string(f.route_id), std::to_string(f.start_time), std::to_string(f.end_time),
             std::to_string(f.headway_secs), std::to_string(f.exact_times)});
    }
  }
  {
    CsvWriter w(dir / "VehicleFleetMix.csv");
    w.row(kFleetHeader);
    for (const auto& f : d.fleet) w.row({std::to_string(f.route_id), f.vehicle_type_id});
  }
  {
    CsvWriter w(dir / "MassTransitFares.csv");
    w.row(kFaresHeader);
    for (const auto& f : d.fares) {
      w.row({std::to_string(f.route_id), std::to_string(f.age_min), std::to_string(f.age_max), format_double(f.fare)});
    }
  }
  {
    CsvWriter w(dir / "ModeIncentives.csv");
    w.row(kIncentivesHeader);
    for (const auto& i : d.incentives) {
      w.row({incentive_mode_name(i.mode), std::to_string(i.age_min), std::to_string(i.age_max),
             format_double(i.income_min), format_double(i.income_max), format_double(i.amount)});
    }
  }
}

}  // namespace policysim
