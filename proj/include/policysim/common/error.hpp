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

#include <stdexcept>
#include <string>

namespace policysim {

/// Coarse error classes. The CLI maps each to an exit code.
enum class ErrorClass {
  kValidation,  // malformed or inconsistent input files
  kInfeasible,  // decision vector violates business rules
  kRuntime,     // anything else
};

const char* error_class_name(ErrorClass c);

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const { return class_; }

 private:
  ErrorClass class_;
};

/// Raised while loading scenario/UDI/config files. Message names file, row and rule.
class LoadError : public Error {
 public:
  LoadError(const std::string& file, long row, const std::string& rule, const std::string& detail)
      : Error(ErrorClass::kValidation, format(file, row, rule, detail)), file_(file), row_(row), rule_(rule) {}

  const std::string& file() const { return file_; }
  long row() const { return row_; }
  const std::string& rule() const { return rule_; }

 private:
  static std::string format(const std::string& file, long row, const std::string& rule, const std::string& detail) {
    std::string s = file;
    if (row >= 0) s += ":" + std::to_string(row);
    s += ": [" + rule + "] " + detail;
    return s;
  }

  std::string file_;
  long row_;
  std::string rule_;
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(ErrorClass::kInfeasible, what) {}
};

class RuntimeError : public Error {
 public:
  explicit RuntimeError(const std::string& what) : Error(ErrorClass::kRuntime, what) {}
};

}  // namespace policysim
