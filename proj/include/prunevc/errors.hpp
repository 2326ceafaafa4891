//
// Copyright 2026 The prunevc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRUNEVC_ERRORS_HPP_
#define PRUNEVC_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prunevc {

// Malformed formula or graph text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  // Message without the position prefix.
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// Invalid configuration: bad substitution, bad weights, bad flags.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally invalid DSA graph (cycle, dangling edge, duplicate id).
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation failure: uncovered atom, quantifier in oracle mode.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration refused because the universe is too large.
class UniverseTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prunevc

#endif  // PRUNEVC_ERRORS_HPP_
