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

// Randomized rounding of LP optima into clone selections.
//
//   RCM   (MinLP -> Cmin)  select clone i with probability x*_i
//   RCM2  (MinLP -> Cmin)  ... with (1 - eps) x*_i,
//                          eps = min(2 sqrt(ln(4n+2) / z*), 1)
//   RDM   (MaxLP -> Dmax)  ... with x*_i, then repair to exactly s
//   RCA   (AvgLP -> Cavg)  ... with x*_i
//   RCA2  (AvgLP -> Cavg)  ... with x*_i / (1 + lambda), lambda = 1/sqrt(z*)
//
// After sampling, L = |X| - s surplus clones are dropped (RDM also fills a
// deficit), then all but RDM optionally pad the selection up to s.

#ifndef BALCOVER_ROUNDING_HPP
#define BALCOVER_ROUNDING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "balcover/core.hpp"
#include "balcover/error.hpp"
#include "balcover/lp.hpp"
#include "balcover/random.hpp"

namespace balcover {

enum class Algorithm { kRcm, kRcm2, kRdm, kRca, kRca2 };
enum class PadPolicy { kNone, kRandom, kGreedy };
enum class RepairPolicy { kRandom, kLowestFraction };

inline std::string_view toString(Algorithm a) {
  switch (a) {
    case Algorithm::kRcm: return "rcm";
    case Algorithm::kRcm2: return "rcm2";
    case Algorithm::kRdm: return "rdm";
    case Algorithm::kRca: return "rca";
    case Algorithm::kRca2: return "rca2";
  }
  return "?";
}

inline std::string_view toString(PadPolicy p) {
  switch (p) {
    case PadPolicy::kNone: return "none";
    case PadPolicy::kRandom: return "random";
    case PadPolicy::kGreedy: return "greedy";
  }
  return "?";
}

inline std::string_view toString(RepairPolicy p) {
  switch (p) {
    case RepairPolicy::kRandom: return "random";
    case RepairPolicy::kLowestFraction: return "lowest-fraction";
  }
  return "?";
}

inline Algorithm parseAlgorithm(std::string_view name) {
  for (auto a : {Algorithm::kRcm, Algorithm::kRcm2, Algorithm::kRdm,
                 Algorithm::kRca, Algorithm::kRca2}) {
    if (toString(a) == name) return a;
  }
  throw UsageError("unknown algorithm '" + std::string(name) +
                   "' (expected rcm, rcm2, rdm, rca or rca2)");
}

inline PadPolicy parsePadPolicy(std::string_view name) {
  for (auto p : {PadPolicy::kNone, PadPolicy::kRandom, PadPolicy::kGreedy}) {
    if (toString(p) == name) return p;
  }
  throw UsageError("unknown pad policy '" + std::string(name) + "'");
}

inline RepairPolicy parseRepairPolicy(std::string_view name) {
  for (auto p : {RepairPolicy::kRandom, RepairPolicy::kLowestFraction}) {
    if (toString(p) == name) return p;
  }
  throw UsageError("unknown repair policy '" + std::string(name) + "'");
}

/// Objective each algorithm optimizes.
inline ObjectiveKind objectiveOf(Algorithm a) {
  switch (a) {
    case Algorithm::kRcm:
    case Algorithm::kRcm2: return ObjectiveKind::kCmin;
    case Algorithm::kRdm: return ObjectiveKind::kDmax;
    case Algorithm::kRca:
    case Algorithm::kRca2: return ObjectiveKind::kCavg;
  }
  return ObjectiveKind::kCmin;
}

inline Formulation formulationOf(Algorithm a) {
  return formulationFor(objectiveOf(a));
}

/// Default rounding algorithm for an objective. Davg has none.
inline Algorithm defaultAlgorithmFor(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kCmin: return Algorithm::kRcm;
    case ObjectiveKind::kCavg: return Algorithm::kRca;
    case ObjectiveKind::kDmax: return Algorithm::kRdm;
    case ObjectiveKind::kDavg: break;
  }
  throw UsageError(
      "no rounding algorithm exists for davg; solve cavg with rca/rca2 "
      "instead (Davg = s/2 - Cavg)");
}

struct RoundingConfig {
  Algorithm algorithm = Algorithm::kRcm;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  PadPolicy padPolicy = PadPolicy::kRandom;  // ignored by RDM
  RepairPolicy repairPolicy = RepairPolicy::kRandom;
};

/// One rounding trial.
struct RoundingRun {
  CoverSolution cover;         // evaluate(instance, D, s)
  Fraction value;              // algorithm objective of D (integer-program form)
  Fraction preRepairValue;     // Z: objective of the raw sample X
  Fraction prePadValue;        // after repair, before padding
  std::int64_t violations = 0; // L = |X| - s, clipped at 0 except for RDM
  std::size_t sampled = 0;     // |X|
  std::size_t padded = 0;      // clones added by padding
  std::optional<double> shrink;  // eps (RCM2) or lambda (RCA2)
  std::uint64_t seed = 0;
};

struct RoundingReport {
  Algorithm algorithm = Algorithm::kRcm;
  ObjectiveKind objective = ObjectiveKind::kCmin;
  RoundingRun best;
  std::size_t bestTrial = 0;
  FractionalSolution lp;
  std::vector<RoundingRun> perRestart;  // by trial index
  std::optional<double> epsilonOrLambda;
};

/// eps = min(2 sqrt(ln(4n+2) / z*), 1); 1 when z* <= 0.
inline double rcm2Epsilon(double zStar, std::size_t numProbes) {
  if (!(zStar > 0.0)) return 1.0;
  const double n = static_cast<double>(numProbes);
  return std::min(2.0 * std::sqrt(std::log(4.0 * n + 2.0) / zStar), 1.0);
}

/// lambda = 1/sqrt(z*); nullopt when z* <= 0.
inline std::optional<double> rca2Lambda(double zStar) {
  if (!(zStar > 0.0)) return std::nullopt;
  return 1.0 / std::sqrt(zStar);
}

namespace detail {

inline void checkRoundingInputs(const Instance& instance, std::int64_t s,
                                const FractionalSolution& lp,
                                Algorithm algorithm) {
  checkBudget(instance, s);
  if (lp.formulation != formulationOf(algorithm)) {
    throw UsageError(std::string(toString(algorithm)) + " rounds a " +
                     std::string(toString(formulationOf(algorithm))) +
                     " solution, got " + std::string(toString(lp.formulation)));
  }
  if (lp.x.size() != instance.numClones()) {
    throw InputError("LP solution has " + std::to_string(lp.x.size()) +
                     " clone variables, instance has " +
                     std::to_string(instance.numClones()));
  }
}

inline std::vector<std::size_t> complementOf(
    const std::vector<std::uint8_t>& chosen) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (!chosen[i]) out.push_back(i);
  }
  return out;
}

inline std::vector<std::size_t> membersOf(
    const std::vector<std::uint8_t>& chosen) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i]) out.push_back(i);
  }
  return out;
}

/// Picks `count` entries of `pool`: uniformly at random, or ordered by the LP
/// value (ascending when `ascending`), ties by index.
inline std::vector<std::size_t> pick(std::vector<std::size_t> pool,
                                     std::size_t count, RepairPolicy policy,
                                     std::span<const double> x, bool ascending,
                                     Rng& rng) {
  if (policy == RepairPolicy::kRandom) {
    // Partial Fisher-Yates over the first `count` slots.
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng.below(pool.size() - k));
      std::swap(pool[k], pool[j]);
    }
  } else {
    std::stable_sort(pool.begin(), pool.end(),
                     [&](std::size_t a, std::size_t b) {
                       return ascending ? x[a] < x[b] : x[a] > x[b];
                     });
  }
  pool.resize(count);
  return pool;
}

inline bool better(ObjectiveKind kind, const Fraction& a, const Fraction& b) {
  return isMaximize(kind) ? a > b : a < b;
}

/// Greedy completion: add the clone whose addition gives the best objective
/// measured against the final budget s; ties go to the lowest index.
inline void padGreedy(const Instance& instance, std::int64_t s,
                      ObjectiveKind kind, std::vector<std::uint8_t>& chosen) {
  const std::size_t n = instance.numProbes();
  std::vector<std::size_t> members = membersOf(chosen);
  std::vector<std::int64_t> degrees = computeDegrees(instance, members);
  std::vector<std::int64_t> trial(n);
  while (static_cast<std::int64_t>(members.size()) < s) {
    std::optional<std::size_t> bestClone;
    Fraction bestValue;
    for (std::size_t i = 0; i < instance.numClones(); ++i) {
      if (chosen[i]) continue;
      auto row = instance.row(i);
      for (std::size_t j = 0; j < n; ++j) trial[j] = degrees[j] + row[j];
      const Fraction v =
          objectiveValue(objectivesFromDegrees(trial, s), n, kind);
      if (!bestClone || better(kind, v, bestValue)) {
        bestClone = i;
        bestValue = v;
      }
    }
    chosen[*bestClone] = 1;
    members.push_back(*bestClone);
    auto row = instance.row(*bestClone);
    for (std::size_t j = 0; j < n; ++j) degrees[j] += row[j];
  }
}

inline RoundingRun roundWithProbabilities(const Instance& instance,
                                          std::int64_t s,
                                          const FractionalSolution& lp,
                                          const RoundingConfig& config,
                                          double scale,
                                          std::optional<double> shrink) {
  const ObjectiveKind kind = objectiveOf(config.algorithm);
  const bool exact = config.algorithm == Algorithm::kRdm;
  const std::size_t m = instance.numClones();
  Rng rng(config.seed);

  RoundingRun run;
  run.seed = config.seed;
  run.shrink = shrink;

  std::vector<std::uint8_t> chosen(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const double p = std::clamp(lp.x[i] * scale, 0.0, 1.0);
    chosen[i] = rng.bernoulli(p) ? 1 : 0;
  }
  std::vector<std::size_t> members = membersOf(chosen);
  run.sampled = members.size();
  run.preRepairValue = selectionValue(instance, members, kind);

  const auto surplus = static_cast<std::int64_t>(members.size()) - s;
  run.violations = exact ? surplus : std::max<std::int64_t>(surplus, 0);
  if (surplus > 0) {
    for (std::size_t i : pick(members, static_cast<std::size_t>(surplus),
                              config.repairPolicy, lp.x, true, rng)) {
      chosen[i] = 0;
    }
  } else if (surplus < 0 && exact) {
    for (std::size_t i :
         pick(complementOf(chosen), static_cast<std::size_t>(-surplus),
              config.repairPolicy, lp.x, false, rng)) {
      chosen[i] = 1;
    }
  }
  members = membersOf(chosen);
  run.prePadValue = selectionValue(instance, members, kind);

  if (!exact && static_cast<std::int64_t>(members.size()) < s) {
    const std::size_t missing = static_cast<std::size_t>(s) - members.size();
    if (config.padPolicy == PadPolicy::kRandom) {
      for (std::size_t i : pick(complementOf(chosen), missing,
                                RepairPolicy::kRandom, lp.x, true, rng)) {
        chosen[i] = 1;
      }
      run.padded = missing;
    } else if (config.padPolicy == PadPolicy::kGreedy) {
      padGreedy(instance, s, kind, chosen);
      run.padded = missing;
    }
    members = membersOf(chosen);
  }

  run.cover = evaluate(instance, members, s);
  run.value = selectionValue(instance, members, kind);
  return run;
}

}  // namespace detail

inline RoundingRun roundRcm(const Instance& instance, std::int64_t s,
                            const FractionalSolution& lp,
                            RoundingConfig config) {
  config.algorithm = Algorithm::kRcm;
  detail::checkRoundingInputs(instance, s, lp, config.algorithm);
  return detail::roundWithProbabilities(instance, s, lp, config, 1.0,
                                        std::nullopt);
}

inline RoundingRun roundRcm2(const Instance& instance, std::int64_t s,
                             const FractionalSolution& lp,
                             RoundingConfig config) {
  config.algorithm = Algorithm::kRcm2;
  detail::checkRoundingInputs(instance, s, lp, config.algorithm);
  const double eps = rcm2Epsilon(lp.zStar, instance.numProbes());
  return detail::roundWithProbabilities(instance, s, lp, config, 1.0 - eps,
                                        eps);
}

inline RoundingRun roundRdm(const Instance& instance, std::int64_t s,
                            const FractionalSolution& lp,
                            RoundingConfig config) {
  config.algorithm = Algorithm::kRdm;
  detail::checkRoundingInputs(instance, s, lp, config.algorithm);
  return detail::roundWithProbabilities(instance, s, lp, config, 1.0,
                                        std::nullopt);
}

inline RoundingRun roundRca(const Instance& instance, std::int64_t s,
                            const FractionalSolution& lp,
                            RoundingConfig config) {
  config.algorithm = Algorithm::kRca;
  detail::checkRoundingInputs(instance, s, lp, config.algorithm);
  return detail::roundWithProbabilities(instance, s, lp, config, 1.0,
                                        std::nullopt);
}

inline RoundingRun roundRca2(const Instance& instance, std::int64_t s,
                             const FractionalSolution& lp,
                             RoundingConfig config) {
  config.algorithm = Algorithm::kRca2;
  detail::checkRoundingInputs(instance, s, lp, config.algorithm);
  const auto lambda = rca2Lambda(lp.zStar);
  // Without a positive z* every probability is zero.
  const double scale = lambda ? 1.0 / (1.0 + *lambda) : 0.0;
  return detail::roundWithProbabilities(instance, s, lp, config, scale, lambda);
}

/// Dispatches on config.algorithm.
inline RoundingRun roundOnce(const Instance& instance, std::int64_t s,
                             const FractionalSolution& lp,
                             const RoundingConfig& config) {
  switch (config.algorithm) {
    case Algorithm::kRcm: return roundRcm(instance, s, lp, config);
    case Algorithm::kRcm2: return roundRcm2(instance, s, lp, config);
    case Algorithm::kRdm: return roundRdm(instance, s, lp, config);
    case Algorithm::kRca: return roundRca(instance, s, lp, config);
    case Algorithm::kRca2: return roundRca2(instance, s, lp, config);
  }
  throw UsageError("unknown algorithm");
}

/// Runs `config.restarts` trials against an already solved LP. Trial t uses
/// seed deriveSeed(config.seed, t). The best trial wins; ties keep the
/// earliest.
inline RoundingReport roundRestarts(const Instance& instance, std::int64_t s,
                                    FractionalSolution lp,
                                    const RoundingConfig& config) {
  if (config.restarts < 1) throw InputError("restarts must be at least 1");
  RoundingReport report;
  report.algorithm = config.algorithm;
  report.objective = objectiveOf(config.algorithm);
  report.perRestart.reserve(config.restarts);
  for (std::size_t t = 0; t < config.restarts; ++t) {
    RoundingConfig trial = config;
    trial.seed = deriveSeed(config.seed, t);
    report.perRestart.push_back(roundOnce(instance, s, lp, trial));
    const auto& run = report.perRestart.back();
    if (t == 0 || detail::better(report.objective, run.value,
                                 report.perRestart[report.bestTrial].value)) {
      report.bestTrial = t;
    }
  }
  report.best = report.perRestart[report.bestTrial];
  report.epsilonOrLambda = report.best.shrink;
  report.lp = std::move(lp);
  return report;
}

/// Builds and solves the LP matching `objective`, then rounds it.
/// Davg has no rounding algorithm and is rejected.
inline RoundingReport solveEndToEnd(const Instance& instance, std::int64_t s,
                                    ObjectiveKind objective,
                                    const RoundingConfig& config,
                                    const SimplexOptions& options = {}) {
  if (objective == ObjectiveKind::kDavg) defaultAlgorithmFor(objective);
  if (objectiveOf(config.algorithm) != objective) {
    throw UsageError(std::string(toString(config.algorithm)) +
                     " does not optimize " + std::string(toString(objective)));
  }
  detail::checkBudget(instance, s);
  FractionalSolution lp =
      solveLp(buildLp(instance, s, formulationOf(config.algorithm)), options);
  return roundRestarts(instance, s, std::move(lp), config);
}

}  // namespace balcover

#endif  // BALCOVER_ROUNDING_HPP
