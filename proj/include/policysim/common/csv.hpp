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
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace policysim {

/// A CSV file read fully into memory. Row numbers reported in errors are 1-based
/// file lines (the header is line 1).
class CsvTable {
 public:
  static CsvTable read(const std::filesystem::path& path);
  static CsvTable parse(std::string_view text, std::string name);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& header() const { return header_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Throws LoadError unless the header is exactly `expected`.
  void require_header(const std::vector<std::string>& expected) const;
  std::optional<std::size_t> column(std::string_view name) const;

  const std::string& cell(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  long line(std::size_t row) const { return lines_[row]; }

  std::string str(std::size_t row, std::string_view col) const;
  int64_t integer(std::size_t row, std::string_view col) const;
  double real(std::size_t row, std::string_view col) const;
  bool blank(std::size_t row, std::string_view col) const;

 private:
  std::size_t col_index(std::string_view col) const;

  std::string name_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<long> lines_;
};

std::vector<std::string> split_csv_line(std::string_view line);
std::vector<std::string> split(std::string_view s, char sep);

/// Shortest round-trip decimal text for a double.
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  explicit CsvWriter(std::ostream& out);

  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream file_;
  std::ostream* out_;
};

}  // namespace policysim
