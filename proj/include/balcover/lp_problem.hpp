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

#ifndef BALCOVER_LP_PROBLEM_HPP
#define BALCOVER_LP_PROBLEM_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "balcover/error.hpp"

namespace balcover {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Formulation { kMinLp, kMaxLp, kAvgLp, kCustom };

inline std::string_view toString(Formulation f) {
  switch (f) {
    case Formulation::kMinLp: return "MINLP";
    case Formulation::kMaxLp: return "MAXLP";
    case Formulation::kAvgLp: return "AVGLP";
    case Formulation::kCustom: return "CUSTOM";
  }
  return "?";
}

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LpConstraint {
  std::vector<double> coefficients;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// Dense linear program with bounded variables:
///   optimize c^T x  s.t.  rows (<=, >=, =),  lower <= x <= upper.
struct LpProblem {
  Sense sense = Sense::kMaximize;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;
  std::vector<LpConstraint> constraints;

  Formulation formulation = Formulation::kCustom;
  std::string provenance;
  /// Leading variables that are clone-selection variables x_i.
  std::size_t cloneVariables = 0;

  std::size_t numVariables() const { return objective.size(); }
  std::size_t numConstraints() const { return constraints.size(); }

  std::size_t addVariable(std::string name, double lo, double hi,
                          double cost) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    names.push_back(std::move(name));
    return objective.size() - 1;
  }

  void addConstraint(std::vector<double> coefficients, Relation relation,
                     double rhs) {
    constraints.push_back({std::move(coefficients), relation, rhs});
  }

  /// Throws InputError on shape or bound inconsistencies.
  void validate() const {
    const std::size_t n = numVariables();
    if (lower.size() != n || upper.size() != n) {
      throw InputError("LP bound vectors do not match the variable count");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
          lower[j] == kInfinity || upper[j] == -kInfinity) {
        throw InputError("LP variable " + std::to_string(j) +
                         " has inconsistent bounds");
      }
      if (!std::isfinite(objective[j])) {
        throw InputError("LP objective coefficient " + std::to_string(j) +
                         " is not finite");
      }
    }
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      const auto& row = constraints[i];
      if (row.coefficients.size() != n) {
        throw InputError("LP constraint " + std::to_string(i) + " has " +
                         std::to_string(row.coefficients.size()) +
                         " coefficients, expected " + std::to_string(n));
      }
      if (!std::isfinite(row.rhs)) {
        throw InputError("LP constraint " + std::to_string(i) +
                         " has a non-finite right-hand side");
      }
    }
  }
};

namespace detail {

inline void writeLpTerm(std::ostream& out, double coef, const std::string& name,
                        bool first) {
  if (coef < 0) {
    out << (first ? "- " : " - ");
  } else if (!first) {
    out << " + ";
  }
  const double mag = std::fabs(coef);
  if (mag != 1.0) out << mag << ' ';
  out << name;
}

inline void writeLpRow(std::ostream& out, const std::vector<double>& coefs,
                       const std::vector<std::string>& names) {
  bool first = true;
  for (std::size_t j = 0; j < coefs.size(); ++j) {
    if (coefs[j] == 0.0) continue;
    writeLpTerm(out, coefs[j], names[j], first);
    first = false;
  }
  if (first) out << "0 " << names.front();
}

}  // namespace detail

/// Writes the problem in CPLEX LP text format (readable by glpsol, HiGHS,
/// CBC and lp_solve's xli). Rows are named r1..rk in constraint order.
inline void writeLpFormat(const LpProblem& problem, std::ostream& out) {
  problem.validate();
  const auto precision = out.precision(17);
  out << "\\ " << toString(problem.formulation);
  if (!problem.provenance.empty()) out << " " << problem.provenance;
  out << "\n";
  out << (problem.sense == Sense::kMaximize ? "Maximize\n" : "Minimize\n");
  out << " obj: ";
  detail::writeLpRow(out, problem.objective, problem.names);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const auto& row = problem.constraints[i];
    out << " r" << (i + 1) << ": ";
    detail::writeLpRow(out, row.coefficients, problem.names);
    switch (row.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    out << row.rhs << "\n";
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < problem.numVariables(); ++j) {
    const double lo = problem.lower[j];
    const double hi = problem.upper[j];
    out << " ";
    if (lo == -kInfinity && hi == kInfinity) {
      out << problem.names[j] << " free\n";
    } else if (lo == -kInfinity) {
      out << "-inf <= " << problem.names[j] << " <= " << hi << "\n";
    } else if (hi == kInfinity) {
      out << problem.names[j] << " >= " << lo << "\n";
    } else {
      out << lo << " <= " << problem.names[j] << " <= " << hi << "\n";
    }
  }
  out << "End\n";
  out.precision(precision);
}

}  // namespace balcover

#endif  // BALCOVER_LP_PROBLEM_HPP
