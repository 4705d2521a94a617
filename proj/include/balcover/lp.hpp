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

// LP relaxations of the three balanced-covering integer programs.
//
//   MinLP: max z         s.t. z <= sum_i a_ij x_i, z <= sum_i (1-a_ij) x_i,
//                             sum_i x_i <= s
//   MaxLP: min z         s.t. z >= sum_i a_ij x_i - s/2,
//                             z >= s/2 - sum_i a_ij x_i,  sum_i x_i = s
//   AvgLP: max sum z_j/n s.t. z_j <= sum_i a_ij x_i,
//                             z_j <= sum_i (1-a_ij) x_i, sum_i x_i <= s
//
// with 0 <= x_i <= 1 and z, z_j >= 0. Per-probe rows come first (all of the
// first family, then all of the second), the cardinality row last.

#ifndef BALCOVER_LP_HPP
#define BALCOVER_LP_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "balcover/core.hpp"
#include "balcover/error.hpp"
#include "balcover/lp_problem.hpp"
#include "balcover/simplex.hpp"

namespace balcover {

struct SolverStats {
  std::size_t iterations = 0;
  std::size_t phaseOneIterations = 0;
  std::size_t blandIterations = 0;
  double primalResidual = 0.0;
  double dualResidual = 0.0;
};

struct FractionalSolution {
  std::vector<double> x;  // x*_i, one per clone
  double zStar = 0.0;
  Formulation formulation = Formulation::kCustom;
  SolverStats stats;
  LpSolution raw;  // full structural vector, duals and basis
};

inline Formulation formulationFor(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kCmin: return Formulation::kMinLp;
    case ObjectiveKind::kCavg: return Formulation::kAvgLp;
    case ObjectiveKind::kDmax: return Formulation::kMaxLp;
    case ObjectiveKind::kDavg: break;
  }
  throw UsageError(
      "no LP relaxation is defined for davg; use cavg (Davg = s/2 - Cavg)");
}

namespace detail {

inline void checkBudget(const Instance& instance, std::int64_t s) {
  if (s < 1 || static_cast<std::size_t>(s) > instance.numClones()) {
    throw InputError("budget s = " + std::to_string(s) +
                     " outside [1, m = " + std::to_string(instance.numClones()) +
                     "]");
  }
}

inline void addCloneVariables(LpProblem& lp, const Instance& instance) {
  for (std::size_t i = 0; i < instance.numClones(); ++i) {
    lp.addVariable("x" + std::to_string(i + 1), 0.0, 1.0, 0.0);
  }
  lp.cloneVariables = instance.numClones();
}

inline std::string provenanceOf(const Instance& instance, std::int64_t s) {
  return "m=" + std::to_string(instance.numClones()) +
         " n=" + std::to_string(instance.numProbes()) +
         " s=" + std::to_string(s);
}

/// Adds z_col <= sum a_ij x_i and z_col <= sum (1-a_ij) x_i for probe j.
inline void addBalanceRows(LpProblem& lp, const Instance& instance,
                           const std::vector<std::size_t>& zColumnOfProbe) {
  const std::size_t m = instance.numClones();
  const std::size_t n = instance.numProbes();
  const std::size_t vars = lp.numVariables();
  for (int family = 0; family < 2; ++family) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> row(vars, 0.0);
      row[zColumnOfProbe[j]] = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        const bool edge = instance.adjacent(i, j);
        const bool counts = family == 0 ? edge : !edge;
        if (counts) row[i] = -1.0;
      }
      lp.addConstraint(std::move(row), Relation::kLessEqual, 0.0);
    }
  }
}

inline void addCardinalityRow(LpProblem& lp, const Instance& instance,
                              std::int64_t s, Relation relation) {
  std::vector<double> row(lp.numVariables(), 0.0);
  for (std::size_t i = 0; i < instance.numClones(); ++i) row[i] = 1.0;
  lp.addConstraint(std::move(row), relation, static_cast<double>(s));
}

}  // namespace detail

inline LpProblem buildMinLp(const Instance& instance, std::int64_t s) {
  detail::checkBudget(instance, s);
  LpProblem lp;
  lp.sense = Sense::kMaximize;
  lp.formulation = Formulation::kMinLp;
  lp.provenance = detail::provenanceOf(instance, s);
  detail::addCloneVariables(lp, instance);
  const std::size_t z = lp.addVariable("z", 0.0, kInfinity, 1.0);
  detail::addBalanceRows(lp, instance,
                         std::vector<std::size_t>(instance.numProbes(), z));
  detail::addCardinalityRow(lp, instance, s, Relation::kLessEqual);
  return lp;
}

inline LpProblem buildMaxLp(const Instance& instance, std::int64_t s) {
  detail::checkBudget(instance, s);
  LpProblem lp;
  lp.sense = Sense::kMinimize;
  lp.formulation = Formulation::kMaxLp;
  lp.provenance = detail::provenanceOf(instance, s);
  detail::addCloneVariables(lp, instance);
  const std::size_t z = lp.addVariable("z", 0.0, kInfinity, 1.0);
  const std::size_t m = instance.numClones();
  const std::size_t n = instance.numProbes();
  const double half = static_cast<double>(s) / 2.0;
  // z - sum a x >= -s/2, then z + sum a x >= s/2.
  for (int family = 0; family < 2; ++family) {
    const double sign = family == 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> row(lp.numVariables(), 0.0);
      row[z] = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (instance.adjacent(i, j)) row[i] = sign;
      }
      lp.addConstraint(std::move(row), Relation::kGreaterEqual, sign * half);
    }
  }
  detail::addCardinalityRow(lp, instance, s, Relation::kEqual);
  return lp;
}

inline LpProblem buildAvgLp(const Instance& instance, std::int64_t s) {
  detail::checkBudget(instance, s);
  LpProblem lp;
  lp.sense = Sense::kMaximize;
  lp.formulation = Formulation::kAvgLp;
  lp.provenance = detail::provenanceOf(instance, s);
  detail::addCloneVariables(lp, instance);
  const double weight = 1.0 / static_cast<double>(instance.numProbes());
  std::vector<std::size_t> zColumns;
  for (std::size_t j = 0; j < instance.numProbes(); ++j) {
    zColumns.push_back(
        lp.addVariable("z" + std::to_string(j + 1), 0.0, kInfinity, weight));
  }
  detail::addBalanceRows(lp, instance, zColumns);
  detail::addCardinalityRow(lp, instance, s, Relation::kLessEqual);
  return lp;
}

inline LpProblem buildLp(const Instance& instance, std::int64_t s,
                         Formulation formulation) {
  switch (formulation) {
    case Formulation::kMinLp: return buildMinLp(instance, s);
    case Formulation::kMaxLp: return buildMaxLp(instance, s);
    case Formulation::kAvgLp: return buildAvgLp(instance, s);
    case Formulation::kCustom: break;
  }
  throw UsageError("no builder for a custom formulation");
}

/// Solves to optimality. Infeasible or unbounded results mean the problem
/// was built wrongly (every valid formulation is feasible and bounded), so
/// they surface as NumericalError together with iteration-limit stalls.
inline FractionalSolution solveLp(const LpProblem& problem,
                                  const SimplexOptions& options = {}) {
  LpSolution raw = solveSimplex(problem, options);
  if (raw.status != LpStatus::kOptimal) {
    throw NumericalError(std::string(toString(problem.formulation)) + " (" +
                         problem.provenance + "): simplex ended " +
                         std::string(toString(raw.status)) + " after " +
                         std::to_string(raw.iterations) + " iterations");
  }
  FractionalSolution out;
  const std::size_t clones = problem.formulation == Formulation::kCustom &&
                                     problem.cloneVariables == 0
                                 ? problem.numVariables()
                                 : problem.cloneVariables;
  out.x.assign(raw.x.begin(), raw.x.begin() + clones);
  out.zStar = raw.objective;
  out.formulation = problem.formulation;
  out.stats = {raw.iterations, raw.phaseOneIterations, raw.blandIterations,
               raw.primalResidual, raw.dualResidual};
  out.raw = std::move(raw);
  return out;
}

}  // namespace balcover

#endif  // BALCOVER_LP_HPP
