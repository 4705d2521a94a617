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

// Ground truth for small instances: exhaustive optima, the two NP-complete
// decision questions, and a Monte-Carlo estimate of the expected excess of
// a Bernoulli sum over (1 + eps) times its mean.

#ifndef BALCOVER_ORACLE_HPP
#define BALCOVER_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "balcover/core.hpp"
#include "balcover/error.hpp"
#include "balcover/random.hpp"

namespace balcover {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // C(n-k+i, i) = C(n-k+i-1, i-1) * (n-k+i) / i is exact at every step and
    // nondecreasing in i, so saturation is final. Dividing by the gcd first
    // leaves i/g dividing the new factor.
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    const std::uint64_t base = result / g;
    if (base > UINT64_MAX / factor) return UINT64_MAX;
    result = base * factor;
  }
  return result;
}

enum class EnumerationOrder {
  kForward,   // lexicographic over clone indices
  kMirrored,  // lexicographic over reversed clone indices
};

struct OracleOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  EnumerationOrder order = EnumerationOrder::kForward;
};

/// Visits every k-subset of {0..m-1} with the probe degrees of the subset.
/// Consecutive lexicographic subsets share a prefix, so only the changed
/// tail is removed and re-added. `visit(subset, degrees)` returns false to
/// stop; the function returns the number of subsets visited.
template <typename Visit>
std::uint64_t forEachSubset(const Instance& instance, std::size_t k,
                            EnumerationOrder order, Visit&& visit) {
  const std::size_t m = instance.numClones();
  const std::size_t n = instance.numProbes();
  if (k > m) return 0;
  auto clone = [&](std::size_t pos) {
    return order == EnumerationOrder::kForward ? pos : m - 1 - pos;
  };
  std::vector<std::size_t> positions(k);
  std::vector<std::size_t> subset(k);
  std::vector<std::int64_t> degrees(n, 0);
  auto add = [&](std::size_t c, std::int64_t sign) {
    auto row = instance.row(c);
    for (std::size_t j = 0; j < n; ++j) degrees[j] += sign * row[j];
  };
  for (std::size_t t = 0; t < k; ++t) {
    positions[t] = t;
    subset[t] = clone(t);
    add(subset[t], 1);
  }
  std::uint64_t visited = 0;
  while (true) {
    ++visited;
    if (!visit(std::span<const std::size_t>(subset),
               std::span<const std::int64_t>(degrees))) {
      return visited;
    }
    std::size_t t = k;
    while (t > 0 && positions[t - 1] == m - k + (t - 1)) --t;
    if (t == 0) return visited;
    --t;
    for (std::size_t u = t; u < k; ++u) add(subset[u], -1);
    ++positions[t];
    for (std::size_t u = t + 1; u < k; ++u) positions[u] = positions[u - 1] + 1;
    for (std::size_t u = t; u < k; ++u) {
      subset[u] = clone(positions[u]);
      add(subset[u], 1);
    }
  }
}

struct ExactResult {
  ObjectiveKind objective = ObjectiveKind::kCmin;
  Fraction optimum;                  // over subsets with |D| = s
  std::vector<std::size_t> witness;  // lexicographically smallest optimum
  std::uint64_t enumerated = 0;
  // Maximization objectives only: best over |D| <= s, scoring D by
  // min(deg, |D| - deg). Absent when that enumeration exceeds the budget.
  std::optional<Fraction> optimumAtMost;
  std::vector<std::size_t> witnessAtMost;
  std::uint64_t enumeratedAtMost = 0;
};

namespace detail {

inline void checkEnumerable(const Instance& instance, std::int64_t s,
                            std::uint64_t budget) {
  if (s < 1 || static_cast<std::size_t>(s) > instance.numClones()) {
    throw InputError("budget s = " + std::to_string(s) + " outside [1, m = " +
                     std::to_string(instance.numClones()) + "]");
  }
  const std::uint64_t count = binomial(instance.numClones(), s);
  if (count > budget) throw BudgetExceeded(count, budget);
}

inline std::vector<std::size_t> sortedCopy(std::span<const std::size_t> v) {
  std::vector<std::size_t> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct BestTracker {
  ObjectiveKind kind;
  bool found = false;
  Fraction value;
  std::vector<std::size_t> witness;

  void offer(const Fraction& v, std::span<const std::size_t> subset) {
    const bool improves =
        !found || (isMaximize(kind) ? v > value : v < value);
    if (improves) {
      found = true;
      value = v;
      witness = sortedCopy(subset);
    } else if (v == value) {
      auto candidate = sortedCopy(subset);
      if (candidate < witness) witness = std::move(candidate);
    }
  }
};

}  // namespace detail

/// Exhaustive optimum of `objective` over all size-s subsets.
inline ExactResult exactOptimum(const Instance& instance, std::int64_t s,
                                ObjectiveKind objective,
                                const OracleOptions& options = {}) {
  detail::checkEnumerable(instance, s, options.budget);
  const std::size_t n = instance.numProbes();
  ExactResult out;
  out.objective = objective;

  detail::BestTracker best{objective, false, {}, {}};
  out.enumerated = forEachSubset(
      instance, static_cast<std::size_t>(s), options.order,
      [&](std::span<const std::size_t> subset,
          std::span<const std::int64_t> degrees) {
        best.offer(objectiveValue(detail::objectivesFromDegrees(degrees, s), n,
                                  objective),
                   subset);
        return true;
      });
  out.optimum = best.value;
  out.witness = std::move(best.witness);

  if (isMaximize(objective)) {
    std::uint64_t total = 0;
    for (std::int64_t k = 0; k <= s; ++k) {
      const std::uint64_t c = binomial(instance.numClones(), k);
      total = c > UINT64_MAX - total ? UINT64_MAX : total + c;
    }
    if (total <= options.budget) {
      detail::BestTracker atMost{objective, false, {}, {}};
      for (std::int64_t k = 0; k <= s; ++k) {
        out.enumeratedAtMost += forEachSubset(
            instance, static_cast<std::size_t>(k), options.order,
            [&](std::span<const std::size_t> subset,
                std::span<const std::int64_t> degrees) {
              atMost.offer(
                  objectiveValue(detail::objectivesFromDegrees(degrees, k), n,
                                 objective),
                  subset);
              return true;
            });
      }
      out.optimumAtMost = atMost.value;
      out.witnessAtMost = std::move(atMost.witness);
    }
  }
  return out;
}

/// A size-s subset giving every probe degree exactly s/2, if any.
/// s must be even.
inline std::optional<std::vector<std::size_t>> findPerfectBalance(
    const Instance& instance, std::int64_t s,
    const OracleOptions& options = {}) {
  if (s % 2 != 0) {
    throw InputError("perfect balance needs an even budget, got s = " +
                     std::to_string(s));
  }
  detail::checkEnumerable(instance, s, options.budget);
  std::optional<std::vector<std::size_t>> found;
  forEachSubset(instance, static_cast<std::size_t>(s), options.order,
                [&](std::span<const std::size_t> subset,
                    std::span<const std::int64_t> degrees) {
                  for (std::int64_t d : degrees) {
                    if (2 * d != s) return true;
                  }
                  found = detail::sortedCopy(subset);
                  return false;
                });
  return found;
}

inline bool perfectBalanceExists(const Instance& instance, std::int64_t s,
                                 const OracleOptions& options = {}) {
  return findPerfectBalance(instance, s, options).has_value();
}

/// A size-s subset with 1 <= deg(p) <= s - 1 for every probe, if any.
inline std::optional<std::vector<std::size_t>> findSizeSCover(
    const Instance& instance, std::int64_t s,
    const OracleOptions& options = {}) {
  detail::checkEnumerable(instance, s, options.budget);
  std::optional<std::vector<std::size_t>> found;
  forEachSubset(instance, static_cast<std::size_t>(s), options.order,
                [&](std::span<const std::size_t> subset,
                    std::span<const std::int64_t> degrees) {
                  for (std::int64_t d : degrees) {
                    if (d < 1 || d > s - 1) return true;
                  }
                  found = detail::sortedCopy(subset);
                  return false;
                });
  return found;
}

inline bool sizeSCoverExists(const Instance& instance, std::int64_t s,
                             const OracleOptions& options = {}) {
  return findSizeSCover(instance, s, options).has_value();
}

struct ExcessEstimate {
  double mean = 0.0;
  double standardError = 0.0;
  double mu = 0.0;  // sum of the probabilities
  std::uint64_t trials = 0;
};

/// Upper bound on E[max(0, Y - (1+eps) mu)] for a sum Y of independent
/// Bernoulli trials with E[Y] <= mu:  2 exp(-mu eps^2 / 4) / ln(1 + eps).
inline double excessExpectationBound(double mu, double epsilon) {
  return 2.0 * std::exp(-mu * epsilon * epsilon / 4.0) / std::log1p(epsilon);
}

/// Monte-Carlo estimate of E[max(0, Y - (1+eps) mu)], Y = sum Bernoulli(p_i),
/// mu = sum p_i.
inline ExcessEstimate estimateExcessExpectation(
    std::span<const double> probabilities, double epsilon,
    std::uint64_t trials, std::uint64_t seed = 0) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw InputError("epsilon must lie in (0, 1]");
  }
  if (trials < 1) throw InputError("trials must be at least 1");
  ExcessEstimate out;
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError("probabilities must lie in [0, 1]");
    }
    out.mu += p;
  }
  out.trials = trials;
  const double threshold = (1.0 + epsilon) * out.mu;
  Rng rng(seed);
  // Welford running mean/variance.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t t = 1; t <= trials; ++t) {
    double y = 0.0;
    for (double p : probabilities) y += rng.bernoulli(p) ? 1.0 : 0.0;
    const double excess = std::max(0.0, y - threshold);
    const double delta = excess - mean;
    mean += delta / static_cast<double>(t);
    m2 += delta * (excess - mean);
  }
  out.mean = mean;
  if (trials > 1) {
    const double variance = m2 / static_cast<double>(trials - 1);
    out.standardError = std::sqrt(variance / static_cast<double>(trials));
  }
  return out;
}

}  // namespace balcover

#endif  // BALCOVER_ORACLE_HPP
