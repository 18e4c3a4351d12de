// Copyright 2026 The eun Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eun {

enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  not_hermitian,
  parse,
  config,
  resource_limit,
  tolerance,
  retry_exhausted,
  io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Failure to parse a Pauli expression. `position` is a 0-based byte offset
/// into the source text.
class ParseError : public Error {
 public:
  enum class Reason {
    length_mismatch,
    unknown_character,
    empty_expression,
    non_finite_number,
    syntax,
  };

  ParseError(Reason reason, std::size_t position, const std::string& what);

  Reason reason() const noexcept { return reason_; }
  std::size_t position() const noexcept { return position_; }

 private:
  Reason reason_;
  std::size_t position_;
};

std::string_view to_string(ParseError::Reason reason);

}  // namespace eun
