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
#include <string>
#include <vector>

namespace policysim {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // scatter instead of a polyline
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Line/scatter chart with linear axes.
void write_line_chart(const std::filesystem::path& path, const Axes& axes, const std::vector<Series>& series);

/// Grouped bar chart: one group per category, one bar per series (series x is ignored).
void write_bar_chart(const std::filesystem::path& path, const Axes& axes, const std::vector<std::string>& categories,
                     const std::vector<Series>& series);

struct Panel {
  std::string title;
  double lower = 0;
  double upper = 1;
  std::vector<double> values;
};

/// Small-multiple strip plots, one panel per entry, values drawn as ticks on [lower, upper].
void write_strip_panels(const std::filesystem::path& path, const std::string& title, const std::vector<Panel>& panels);

}  // namespace policysim
