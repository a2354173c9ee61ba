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

#include "policysim/optimize/history.hpp"

#include <algorithm>
#include <stdexcept>

#include "policysim/common/csv.hpp"
#include "policysim/common/error.hpp"

namespace policysim {

namespace {
const std::vector<std::string> kFixedColumns{"trial_id", "score", "iterations", "seed"};
}

void History::append(Trial t) {
  if (trials_.empty() || t.score < trials_[best_].score) best_ = trials_.size();
  trials_.push_back(std::move(t));
}

std::size_t History::best_index() const {
  if (trials_.empty()) throw std::logic_error("best_index of an empty history");
  return best_;
}

std::vector<double> History::best_so_far() const {
  std::vector<double> out;
  for (const auto& t : trials_) out.push_back(out.empty() ? t.score : std::min(out.back(), t.score));
  return out;
}

void write_history_csv(const History& h, const SearchSpace& space, const std::filesystem::path& path) {
  CsvWriter w(path);
  std::vector<std::string> header = kFixedColumns;
  for (const auto& d : space.dimensions()) header.push_back(d.name);
  w.row(header);
  for (const auto& t : h.trials()) {
    std::vector<std::string> row{std::to_string(t.id), format_double(t.score), std::to_string(t.iterations),
                                 std::to_string(t.seed)};
    for (double v : t.point) row.push_back(format_double(v));
    w.row(row);
  }
}

History read_history_csv(const std::filesystem::path& path, std::vector<std::string>* dimension_names) {
  const CsvTable t = CsvTable::read(path);
  const auto& header = t.header();
  if (header.size() < kFixedColumns.size() || !std::equal(kFixedColumns.begin(), kFixedColumns.end(), header.begin())) {
    throw LoadError(t.name(), 1, "HISTORY_HEADER", "expected trial_id,score,iterations,seed,...");
  }
  if (dimension_names) dimension_names->assign(header.begin() + kFixedColumns.size(), header.end());
  History h;
  for (std::size_t r = 0; r < t.size(); ++r) {
    Trial trial;
    trial.id = static_cast<int>(t.integer(r, "trial_id"));
    trial.score = t.real(r, "score");
    trial.iterations = static_cast<int>(t.integer(r, "iterations"));
    trial.seed = static_cast<uint64_t>(t.integer(r, "seed"));
    for (std::size_t c = kFixedColumns.size(); c < header.size(); ++c) trial.point.push_back(t.real(r, header[c]));
    h.append(std::move(trial));
  }
  return h;
}

}  // namespace policysim
