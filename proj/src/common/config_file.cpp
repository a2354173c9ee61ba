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

#include "policysim/common/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "policysim/common/error.hpp"

namespace policysim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

KeyValueFile KeyValueFile::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string(), -1, "FILE_MISSING", "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.filename().string());
}

KeyValueFile KeyValueFile::parse(std::string_view text, const std::string& name) {
  KeyValueFile kv;
  long line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw LoadError(name, line_no, "CONFIG_SYNTAX", "expected key=value");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw LoadError(name, line_no, "CONFIG_SYNTAX", "empty key");
    if (kv.entries.count(key)) throw LoadError(name, line_no, "CONFIG_DUPLICATE", "duplicate key " + key);
    kv.entries.emplace(key, std::move(value));
    kv.lines.emplace(std::move(key), line_no);
  }
  return kv;
}

double parse_real(const std::string& file, long line, const std::string& key, const std::string& value) {
  double v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size()) {
    throw LoadError(file, line, "CONFIG_TYPE", key + " expects a number, got '" + value + "'");
  }
  return v;
}

}  // namespace policysim
