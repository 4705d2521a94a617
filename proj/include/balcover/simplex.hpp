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

// Dense two-phase primal simplex for bounded variables.
//
// Each row i becomes a_i x + s_i = b_i with a logical s_i whose bounds
// encode the relation: [0, inf) for <=, (-inf, 0] for >=, [0, 0] for =.
// Structurals start at a finite bound; rows whose logical would then be out
// of bounds get an artificial, and phase 1 minimizes the artificials' sum.
// Phase 2 fixes the artificials at zero.
//
// Pricing is Dantzig (largest reduced-cost magnitude, lowest index on ties).
// After `blandAfterDegenerate` consecutive degenerate pivots the solver
// switches to Bland's rule (lowest eligible index for both the entering and
// the leaving variable) until the objective moves again. Every choice is
// deterministic, so identical problems produce identical bases bit-for-bit.

#ifndef BALCOVER_SIMPLEX_HPP
#define BALCOVER_SIMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "balcover/error.hpp"
#include "balcover/lp_problem.hpp"

namespace balcover {

struct SimplexOptions {
  double feasibilityTolerance = 1e-9;
  double optimalityTolerance = 1e-9;
  double pivotTolerance = 1e-9;
  /// 0 selects a size-dependent default.
  std::size_t maxIterations = 0;
  std::size_t blandAfterDegenerate = 50;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

inline std::string_view toString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration limit";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  std::vector<double> x;             // structural values
  double objective = 0.0;            // in the problem's own sense
  std::vector<double> duals;         // one per row, problem's own sense
  std::vector<double> reducedCosts;  // c - A^T y, one per structural
  std::vector<std::size_t> basis;    // basic column per row
  std::size_t iterations = 0;
  std::size_t phaseOneIterations = 0;
  std::size_t blandIterations = 0;
  double primalResidual = 0.0;  // max row or bound violation
  double dualResidual = 0.0;    // max reduced-cost sign violation
};

class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LpProblem& problem, SimplexOptions options = {})
      : problem_(problem), options_(options) {
    problem_.validate();
    numStructural_ = problem_.numVariables();
    numRows_ = problem_.numConstraints();
    if (options_.maxIterations == 0) {
      options_.maxIterations = 20000 + 50 * (numRows_ + numStructural_);
    }
  }

  LpSolution solve() {
    initialize();
    LpSolution out;
    if (numArtificial_ > 0) {
      setPhaseOneCosts();
      const LpStatus status = iterate(out);
      out.phaseOneIterations = out.iterations;
      if (status != LpStatus::kOptimal) {
        out.status = status;
        return out;
      }
      double infeasibility = 0.0;
      for (std::size_t k = artificialBegin(); k < numColumns_; ++k) {
        infeasibility += value_[k];
      }
      if (infeasibility > options_.feasibilityTolerance * (1.0 + rhsScale_)) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      for (std::size_t k = artificialBegin(); k < numColumns_; ++k) {
        upper_[k] = 0.0;
        if (state_[k] != State::kBasic) {
          state_[k] = State::kAtLower;
          value_[k] = 0.0;
        }
      }
    }
    setPhaseTwoCosts();
    out.status = iterate(out);
    if (out.status != LpStatus::kOptimal) return out;
    refineBasicValues();
    extract(out);
    return out;
  }

 private:
  enum class State : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

  std::size_t artificialBegin() const { return numStructural_ + numRows_; }
  double& at(std::size_t row, std::size_t col) {
    return tableau_[row * numColumns_ + col];
  }
  double at(std::size_t row, std::size_t col) const {
    return tableau_[row * numColumns_ + col];
  }

  void initialize() {
    const std::size_t n = numStructural_;
    const std::size_t r = numRows_;

    std::vector<double> startValue(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double lo = problem_.lower[j];
      const double hi = problem_.upper[j];
      startValue[j] = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
    }

    // Residuals decide which rows need an artificial.
    std::vector<double> residual(r);
    std::vector<double> slackLo(r), slackHi(r);
    std::vector<int> artificialSign(r, 0);
    numArtificial_ = 0;
    rhsScale_ = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      const auto& row = problem_.constraints[i];
      double activity = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        activity += row.coefficients[j] * startValue[j];
      }
      residual[i] = row.rhs - activity;
      rhsScale_ = std::max(rhsScale_, std::fabs(row.rhs));
      switch (row.relation) {
        case Relation::kLessEqual: slackLo[i] = 0.0; slackHi[i] = kInfinity; break;
        case Relation::kGreaterEqual: slackLo[i] = -kInfinity; slackHi[i] = 0.0; break;
        case Relation::kEqual: slackLo[i] = 0.0; slackHi[i] = 0.0; break;
      }
      const double tol = options_.feasibilityTolerance;
      if (residual[i] < slackLo[i] - tol) {
        artificialSign[i] = -1;
        ++numArtificial_;
      } else if (residual[i] > slackHi[i] + tol) {
        artificialSign[i] = 1;
        ++numArtificial_;
      }
    }

    numColumns_ = n + r + numArtificial_;
    tableau_.assign(r * numColumns_, 0.0);
    lower_.assign(numColumns_, 0.0);
    upper_.assign(numColumns_, 0.0);
    value_.assign(numColumns_, 0.0);
    state_.assign(numColumns_, State::kAtLower);
    basisHead_.assign(r, 0);
    artificialRow_.assign(numArtificial_, 0);
    artificialSign_.assign(numArtificial_, 0);

    for (std::size_t j = 0; j < n; ++j) {
      lower_[j] = problem_.lower[j];
      upper_[j] = problem_.upper[j];
      value_[j] = startValue[j];
      if (std::isfinite(lower_[j])) {
        state_[j] = State::kAtLower;
      } else if (std::isfinite(upper_[j])) {
        state_[j] = State::kAtUpper;
      } else {
        state_[j] = State::kFree;
      }
    }

    std::size_t nextArtificial = artificialBegin();
    for (std::size_t i = 0; i < r; ++i) {
      const auto& row = problem_.constraints[i];
      const std::size_t slack = n + i;
      lower_[slack] = slackLo[i];
      upper_[slack] = slackHi[i];
      for (std::size_t j = 0; j < n; ++j) at(i, j) = row.coefficients[j];
      at(i, slack) = 1.0;
      if (artificialSign[i] == 0) {
        basisHead_[i] = slack;
        state_[slack] = State::kBasic;
        value_[slack] = std::clamp(residual[i], slackLo[i], slackHi[i]);
        continue;
      }
      // Logical parks at the violated bound; the artificial absorbs the rest.
      const double parked = artificialSign[i] > 0 ? slackHi[i] : slackLo[i];
      value_[slack] = parked;
      state_[slack] = artificialSign[i] > 0 ? State::kAtUpper : State::kAtLower;
      const std::size_t art = nextArtificial++;
      artificialRow_[art - artificialBegin()] = i;
      artificialSign_[art - artificialBegin()] = artificialSign[i];
      lower_[art] = 0.0;
      upper_[art] = kInfinity;
      at(i, art) = artificialSign[i];
      if (artificialSign[i] < 0) {
        for (std::size_t c = 0; c < numColumns_; ++c) at(i, c) = -at(i, c);
      }
      basisHead_[i] = art;
      state_[art] = State::kBasic;
      value_[art] = std::fabs(residual[i] - parked);
    }
  }

  void setPhaseOneCosts() {
    cost_.assign(numColumns_, 0.0);
    for (std::size_t k = artificialBegin(); k < numColumns_; ++k) cost_[k] = 1.0;
    computeReducedCosts();
  }

  void setPhaseTwoCosts() {
    cost_.assign(numColumns_, 0.0);
    const double sign = problem_.sense == Sense::kMaximize ? -1.0 : 1.0;
    for (std::size_t j = 0; j < numStructural_; ++j) {
      cost_[j] = sign * problem_.objective[j];
    }
    computeReducedCosts();
  }

  void computeReducedCosts() {
    reduced_ = cost_;
    for (std::size_t i = 0; i < numRows_; ++i) {
      const double cb = cost_[basisHead_[i]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c < numColumns_; ++c) {
        reduced_[c] -= cb * at(i, c);
      }
    }
    for (std::size_t i = 0; i < numRows_; ++i) reduced_[basisHead_[i]] = 0.0;
  }

  bool fixed(std::size_t col) const { return lower_[col] == upper_[col]; }

  /// Entering column and direction (+1 increase, -1 decrease), or false.
  bool price(bool bland, std::size_t& entering, int& direction) const {
    const double tol = options_.optimalityTolerance;
    double best = 0.0;
    bool found = false;
    for (std::size_t c = 0; c < numColumns_; ++c) {
      if (state_[c] == State::kBasic || fixed(c)) continue;
      const double d = reduced_[c];
      int dir = 0;
      if (d < -tol && (state_[c] == State::kAtLower || state_[c] == State::kFree)) {
        dir = 1;
      } else if (d > tol &&
                 (state_[c] == State::kAtUpper || state_[c] == State::kFree)) {
        dir = -1;
      }
      if (dir == 0) continue;
      if (bland) {
        entering = c;
        direction = dir;
        return true;
      }
      if (!found || std::fabs(d) > best) {
        best = std::fabs(d);
        entering = c;
        direction = dir;
        found = true;
      }
    }
    return found;
  }

  LpStatus iterate(LpSolution& out) {
    std::size_t degenerateStreak = 0;
    const double pivotTol = options_.pivotTolerance;
    while (true) {
      if (out.iterations >= options_.maxIterations) {
        return LpStatus::kIterationLimit;
      }
      const bool bland = degenerateStreak >= options_.blandAfterDegenerate;
      std::size_t q = 0;
      int dir = 0;
      if (!price(bland, q, dir)) return LpStatus::kOptimal;
      ++out.iterations;
      if (bland) ++out.blandIterations;

      // Ratio test: largest step keeping every basic variable in bounds.
      double theta = kInfinity;
      for (std::size_t i = 0; i < numRows_; ++i) {
        const double alpha = dir * at(i, q);
        const std::size_t b = basisHead_[i];
        double limit = kInfinity;
        if (alpha > pivotTol && std::isfinite(lower_[b])) {
          limit = (value_[b] - lower_[b]) / alpha;
        } else if (alpha < -pivotTol && std::isfinite(upper_[b])) {
          limit = (upper_[b] - value_[b]) / -alpha;
        }
        theta = std::min(theta, std::max(limit, 0.0));
      }
      const double span = upper_[q] - lower_[q];
      if (std::isfinite(span) && span <= theta) {
        // Bound flip: entering variable reaches its opposite bound first.
        applyStep(q, dir, span);
        state_[q] = dir > 0 ? State::kAtUpper : State::kAtLower;
        value_[q] = dir > 0 ? upper_[q] : lower_[q];
        degenerateStreak = 0;
        continue;
      }
      if (!std::isfinite(theta)) return LpStatus::kUnbounded;

      // Among rows attaining the minimum ratio pick the largest pivot, or the
      // lowest basic index under Bland's rule.
      const double tieTol = 1e-12 * std::max(1.0, theta);
      std::size_t leave = numRows_;
      double bestAlpha = 0.0;
      for (std::size_t i = 0; i < numRows_; ++i) {
        const double alpha = dir * at(i, q);
        const std::size_t b = basisHead_[i];
        double limit = kInfinity;
        if (alpha > pivotTol && std::isfinite(lower_[b])) {
          limit = (value_[b] - lower_[b]) / alpha;
        } else if (alpha < -pivotTol && std::isfinite(upper_[b])) {
          limit = (upper_[b] - value_[b]) / -alpha;
        }
        if (std::max(limit, 0.0) > theta + tieTol) continue;
        if (leave == numRows_) {
          leave = i;
          bestAlpha = std::fabs(alpha);
          continue;
        }
        if (bland) {
          if (b < basisHead_[leave]) leave = i;
        } else if (std::fabs(alpha) > bestAlpha ||
                   (std::fabs(alpha) == bestAlpha && b < basisHead_[leave])) {
          leave = i;
          bestAlpha = std::fabs(alpha);
        }
      }

      const double alphaLeave = dir * at(leave, q);
      const std::size_t leaving = basisHead_[leave];
      applyStep(q, dir, theta);
      if (alphaLeave > 0) {
        value_[leaving] = lower_[leaving];
        state_[leaving] = State::kAtLower;
      } else {
        value_[leaving] = upper_[leaving];
        state_[leaving] = State::kAtUpper;
      }
      if (fixed(leaving)) state_[leaving] = State::kAtLower;
      pivot(leave, q);
      basisHead_[leave] = q;
      state_[q] = State::kBasic;

      if (theta <= options_.feasibilityTolerance) {
        ++degenerateStreak;
      } else {
        degenerateStreak = 0;
      }
    }
  }

  void applyStep(std::size_t q, int dir, double theta) {
    if (theta == 0.0) return;
    for (std::size_t i = 0; i < numRows_; ++i) {
      const double alpha = at(i, q);
      if (alpha != 0.0) value_[basisHead_[i]] -= dir * theta * alpha;
    }
    value_[q] += dir * theta;
  }

  void pivot(std::size_t p, std::size_t q) {
    const double piv = at(p, q);
    pivotSupport_.clear();
    for (std::size_t c = 0; c < numColumns_; ++c) {
      double& v = at(p, c);
      if (v == 0.0) continue;
      v /= piv;
      pivotSupport_.push_back(c);
    }
    at(p, q) = 1.0;
    for (std::size_t i = 0; i < numRows_; ++i) {
      if (i == p) continue;
      const double f = at(i, q);
      if (f == 0.0) continue;
      for (std::size_t c : pivotSupport_) at(i, c) -= f * at(p, c);
      at(i, q) = 0.0;
    }
    const double f = reduced_[q];
    if (f != 0.0) {
      for (std::size_t c : pivotSupport_) reduced_[c] -= f * at(p, c);
    }
    reduced_[q] = 0.0;
  }

  /// Original (unscaled) column entry for the current basis solve.
  double originalEntry(std::size_t row, std::size_t col) const {
    if (col < numStructural_) return problem_.constraints[row].coefficients[col];
    if (col < artificialBegin()) return col - numStructural_ == row ? 1.0 : 0.0;
    const std::size_t k = col - artificialBegin();
    return artificialRow_[k] == row ? artificialSign_[k] : 0.0;
  }

  /// Recomputes basic values from the original data, B x_B = b - N x_N,
  /// to shed the drift accumulated by tableau updates.
  void refineBasicValues() {
    const std::size_t r = numRows_;
    if (r == 0) return;
    std::vector<double> basisMatrix(r * r);
    std::vector<double> rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
      rhs[i] = problem_.constraints[i].rhs;
      for (std::size_t k = 0; k < r; ++k) {
        basisMatrix[i * r + k] = originalEntry(i, basisHead_[k]);
      }
    }
    for (std::size_t c = 0; c < numColumns_; ++c) {
      if (state_[c] == State::kBasic || value_[c] == 0.0) continue;
      for (std::size_t i = 0; i < r; ++i) {
        rhs[i] -= originalEntry(i, c) * value_[c];
      }
    }
    // Gaussian elimination with partial pivoting.
    std::vector<std::size_t> perm(r);
    for (std::size_t k = 0; k < r; ++k) {
      std::size_t best = k;
      for (std::size_t i = k + 1; i < r; ++i) {
        if (std::fabs(basisMatrix[i * r + k]) >
            std::fabs(basisMatrix[best * r + k])) {
          best = i;
        }
      }
      if (std::fabs(basisMatrix[best * r + k]) < 1e-12) return;  // keep tableau values
      if (best != k) {
        for (std::size_t c = 0; c < r; ++c) {
          std::swap(basisMatrix[k * r + c], basisMatrix[best * r + c]);
        }
        std::swap(rhs[k], rhs[best]);
      }
      for (std::size_t i = k + 1; i < r; ++i) {
        const double f = basisMatrix[i * r + k] / basisMatrix[k * r + k];
        if (f == 0.0) continue;
        for (std::size_t c = k; c < r; ++c) {
          basisMatrix[i * r + c] -= f * basisMatrix[k * r + c];
        }
        rhs[i] -= f * rhs[k];
      }
    }
    std::vector<double> solution(r);
    for (std::size_t k = r; k-- > 0;) {
      double acc = rhs[k];
      for (std::size_t c = k + 1; c < r; ++c) {
        acc -= basisMatrix[k * r + c] * solution[c];
      }
      solution[k] = acc / basisMatrix[k * r + k];
    }
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t b = basisHead_[k];
      double v = solution[k];
      // Snap values that sit on a bound up to rounding noise.
      if (std::fabs(v - lower_[b]) <= options_.feasibilityTolerance) v = lower_[b];
      if (std::fabs(v - upper_[b]) <= options_.feasibilityTolerance) v = upper_[b];
      value_[b] = v;
    }
  }

  void extract(LpSolution& out) const {
    const double sign = problem_.sense == Sense::kMaximize ? -1.0 : 1.0;
    out.x.assign(value_.begin(), value_.begin() + numStructural_);
    out.objective = 0.0;
    for (std::size_t j = 0; j < numStructural_; ++j) {
      out.objective += problem_.objective[j] * out.x[j];
    }
    out.duals.resize(numRows_);
    for (std::size_t i = 0; i < numRows_; ++i) {
      out.duals[i] = sign * -reduced_[numStructural_ + i];
    }
    out.reducedCosts.resize(numStructural_);
    for (std::size_t j = 0; j < numStructural_; ++j) {
      out.reducedCosts[j] = sign * reduced_[j];
    }
    out.basis = basisHead_;

    double primal = 0.0;
    for (std::size_t j = 0; j < numStructural_; ++j) {
      primal = std::max(primal, problem_.lower[j] - out.x[j]);
      primal = std::max(primal, out.x[j] - problem_.upper[j]);
    }
    for (const auto& row : problem_.constraints) {
      double activity = 0.0;
      for (std::size_t j = 0; j < numStructural_; ++j) {
        activity += row.coefficients[j] * out.x[j];
      }
      const double diff = activity - row.rhs;
      switch (row.relation) {
        case Relation::kLessEqual: primal = std::max(primal, diff); break;
        case Relation::kGreaterEqual: primal = std::max(primal, -diff); break;
        case Relation::kEqual: primal = std::max(primal, std::fabs(diff)); break;
      }
    }
    out.primalResidual = primal;

    double dual = 0.0;
    for (std::size_t c = 0; c < artificialBegin(); ++c) {
      const double d = reduced_[c];
      switch (state_[c]) {
        case State::kBasic:
        case State::kFree: dual = std::max(dual, std::fabs(d)); break;
        case State::kAtLower:
          if (!fixed(c)) dual = std::max(dual, -d);
          break;
        case State::kAtUpper:
          if (!fixed(c)) dual = std::max(dual, d);
          break;
      }
    }
    out.dualResidual = dual;
  }

  const LpProblem& problem_;
  SimplexOptions options_;
  std::size_t numStructural_ = 0;
  std::size_t numRows_ = 0;
  std::size_t numArtificial_ = 0;
  std::size_t numColumns_ = 0;
  double rhsScale_ = 0.0;

  std::vector<double> tableau_;  // numRows_ x numColumns_, row-major, B^-1 A
  std::vector<double> lower_, upper_, value_, cost_, reduced_;
  std::vector<State> state_;
  std::vector<std::size_t> basisHead_;
  std::vector<std::size_t> artificialRow_;
  std::vector<int> artificialSign_;
  std::vector<std::size_t> pivotSupport_;
};

/// Solves `problem`; the returned status reports infeasibility, unboundedness
/// and iteration-limit stalls instead of throwing.
inline LpSolution solveSimplex(const LpProblem& problem,
                               const SimplexOptions& options = {}) {
  return BoundedSimplex(problem, options).solve();
}

}  // namespace balcover

#endif  // BALCOVER_SIMPLEX_HPP
