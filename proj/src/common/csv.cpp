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

#include "policysim/common/csv.hpp"

#include <charconv>
#include <sstream>

#include "policysim/common/error.hpp"

namespace policysim {

const char* error_class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::kValidation:
      return "ValidationError";
    case ErrorClass::kInfeasible:
      return "InfeasibleInput";
    case ErrorClass::kRuntime:
      return "RuntimeError";
  }
  return "RuntimeError";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string(), -1, "FILE_MISSING", "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.filename().string());
}

CsvTable CsvTable::parse(std::string_view text, std::string name) {
  CsvTable t;
  t.name_ = std::move(name);
  long line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto cells = split_csv_line(line);
    if (!have_header) {
      t.header_ = std::move(cells);
      have_header = true;
    } else {
      if (cells.size() != t.header_.size()) {
        throw LoadError(
            t.name_, line_no, "CSV_ARITY",
            "expected " + std::to_string(t.header_.size()) + " fields, got " + std::to_string(cells.size()));
      }
      t.rows_.push_back(std::move(cells));
      t.lines_.push_back(line_no);
    }
    if (end == text.size()) break;
  }
  return t;
}

void CsvTable::require_header(const std::vector<std::string>& expected) const {
  // A zero-byte file is treated as an empty table.
  if (header_.empty() && rows_.empty()) return;
  if (header_ != expected) {
    std::string want;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    throw LoadError(name_, 1, "CSV_HEADER", "expected header '" + want + "'");
  }
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t CsvTable::col_index(std::string_view col) const {
  auto c = column(col);
  if (!c) throw LoadError(name_, 1, "CSV_HEADER", "missing column '" + std::string(col) + "'");
  return *c;
}

std::string CsvTable::str(std::size_t row, std::string_view col) const { return rows_[row][col_index(col)]; }

bool CsvTable::blank(std::size_t row, std::string_view col) const { return rows_[row][col_index(col)].empty(); }

int64_t CsvTable::integer(std::size_t row, std::string_view col) const {
  const auto& s = rows_[row][col_index(col)];
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw LoadError(name_, lines_[row], "CSV_TYPE",
                    "column '" + std::string(col) + "' expects an integer, got '" + s + "'");
  }
  return v;
}

double CsvTable::real(std::size_t row, std::string_view col) const {
  const auto& s = rows_[row][col_index(col)];
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw LoadError(name_, lines_[row], "CSV_TYPE",
                    "column '" + std::string(col) + "' expects a number, got '" + s + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : file_(path, std::ios::binary), out_(&file_) {
  if (!file_) throw RuntimeError("cannot write " + path.string());
}

CsvWriter::CsvWriter(std::ostream& out) : out_(&out) {}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) *out_ << ',';
    const auto& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      *out_ << '"';
      for (char ch : c) {
        if (ch == '"') *out_ << '"';
        *out_ << ch;
      }
      *out_ << '"';
    } else {
      *out_ << c;
    }
  }
  *out_ << '\n';
}

}  // namespace policysim
