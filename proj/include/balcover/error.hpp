// Copyright 2026 The balcover Authors
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

#ifndef BALCOVER_ERROR_HPP
#define BALCOVER_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace balcover {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  kUsage = 1,
  kInput = 2,
  kBudget = 3,
  kInternal = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exitCode() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

/// Malformed data: bad sequences, bad matrices, out-of-range parameters.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(ErrorKind::kInput, what) {}
};

/// Incompatible request, e.g. asking for a rounding algorithm that does not
/// exist for the objective.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what)
      : Error(ErrorKind::kUsage, what) {}
};

/// Exhaustive enumeration would exceed the configured subset budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : Error(ErrorKind::kBudget,
              "enumeration budget exceeded: " + std::to_string(required) +
                  " subsets required, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Solver breakdown: infeasible/unbounded formulations or iteration limits.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::kInternal, what) {}
};

}  // namespace balcover

#endif  // BALCOVER_ERROR_HPP
