// Copyright 2026 The lhzqaoa Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lhzqaoa {

/// Violated precondition on an argument (sizes, ranges, malformed params).
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds a hard enumeration or memory bound.
class ResourceLimit : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Malformed text input. `line()` is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error(line == 0 ? what
                                       : "line " + std::to_string(line) +
                                             ": " + what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

} // namespace lhzqaoa
