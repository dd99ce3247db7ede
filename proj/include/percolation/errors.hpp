// Copyright 2026 The Percolation Games Authors
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

#ifndef PERCOLATION_ERRORS_HPP_
#define PERCOLATION_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace percolation {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration or structurally invalid input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An environment model was used outside its domain.
class ModelError : public Error {
 public:
  using Error::Error;
};

class OrientationError : public Error {
 public:
  using Error::Error;
};

// Raised when an orientation check is requested but the game declares no
// direction vector.
class MissingDirectionError : public OrientationError {
 public:
  MissingDirectionError() : OrientationError("no direction declared") {}
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed its configured work or memory budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t required,
              std::uint64_t budget)
      : Error(what + ": requires " + std::to_string(required) +
              ", budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

// A checked inequality failed. Used by the CLI to select its exit code.
class CheckFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace percolation

#endif  // PERCOLATION_ERRORS_HPP_
