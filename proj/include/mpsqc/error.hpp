// Copyright 2026 The mpsqc Authors
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

#include <stdexcept>
#include <string>

namespace mpsqc {

/// Argument outside the operation's domain (bad index, empty input, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Structurally invalid value, e.g. a non-unitary gate matrix.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Request would exceed the simulation limits.
class ResourceError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Gate layout the MPS backend cannot execute (non-adjacent wires).
class UnsupportedTopologyError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite value produced during optimization.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string &what, int iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) +
                           ")"),
        iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

private:
  int iteration_;
};

/// Problem reading an input file; line is 1-based, 0 when not line-specific.
class IngestionError : public std::runtime_error {
public:
  IngestionError(const std::string &path, std::size_t line,
                 const std::string &what)
      : std::runtime_error(path + (line ? ":" + std::to_string(line) : "") +
                           ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace mpsqc
