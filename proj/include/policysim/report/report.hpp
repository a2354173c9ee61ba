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
#include <vector>

namespace policysim {

struct ReportOptions {
  double top_fraction = 0.05;  // share of best trials shown in the input distributions
};

/// Reads a finished run directory (bau, score or optimize output) and writes plots and
/// summary CSVs into out_dir:
///   score_trace.svg/.csv       trial scores and best-so-far      (needs history.csv)
///   top_inputs.svg/.csv        best trials' coordinates          (needs history.csv)
///   mode_split.svg/.csv        planned legs per mode and iteration (needs iterations.csv)
///   activity_starts.svg/.csv   hourly activity starts by type    (needs events.csv)
///   bus_vmt.svg/.csv           hourly bus miles, occupied vs empty (needs events.csv)
/// Throws LoadError when the directory holds none of these inputs. Returns written files.
std::vector<std::filesystem::path> write_report(const std::filesystem::path& run_dir,
                                                const std::filesystem::path& out_dir, const ReportOptions& opt = {});

}  // namespace policysim
