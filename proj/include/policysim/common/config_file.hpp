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
#include <map>
#include <string>
#include <string_view>

namespace policysim {

/// Flat `key=value` text file. `#` starts a comment; blank lines are ignored.
/// Keys keep file order only through the map's sort, which is what writers rely on.
struct KeyValueFile {
  std::map<std::string, std::string> entries;
  std::map<std::string, long> lines;

  static KeyValueFile read(const std::filesystem::path& path);
  static KeyValueFile parse(std::string_view text, const std::string& name);
};

double parse_real(const std::string& file, long line, const std::string& key, const std::string& value);

}  // namespace policysim
