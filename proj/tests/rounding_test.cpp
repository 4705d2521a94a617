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

#include <gtest/gtest.h>

#include <cmath>

#include "balcover/generators.hpp"
#include "balcover/rounding.hpp"
#include "test_util.hpp"

namespace balcover {
namespace {

constexpr double kTol = 1e-7;

/// A hand-made LP solution, for exercising the rounding step in isolation.
FractionalSolution fakeLp(Formulation f, std::vector<double> x, double zStar) {
  FractionalSolution lp;
  lp.formulation = f;
  lp.x = std::move(x);
  lp.zStar = zStar;
  return lp;
}

RoundingConfig config(Algorithm a, std::uint64_t seed,
                      PadPolicy pad = PadPolicy::kRandom) {
  RoundingConfig c;
  c.algorithm = a;
  c.seed = seed;
  c.padPolicy = pad;
  return c;
}

constexpr Algorithm kAll[] = {Algorithm::kRcm, Algorithm::kRcm2, Algorithm::kRdm,
                              Algorithm::kRca, Algorithm::kRca2};

TEST(Rounding, ZeroVectorSelectsNothingBeforePadding) {
  const Instance g = testing::sampleInstance();
  for (auto a : {Algorithm::kRcm, Algorithm::kRca}) {
    const auto lp = fakeLp(formulationOf(a), std::vector<double>(8, 0.0), 0.0);
    const RoundingRun bare = roundOnce(g, 5, lp, config(a, 1, PadPolicy::kNone));
    EXPECT_TRUE(bare.cover.selected.empty());
    EXPECT_EQ(bare.value, (Fraction{0, 1}));
    EXPECT_EQ(bare.sampled, 0u);
    const RoundingRun padded = roundOnce(g, 5, lp, config(a, 1));
    EXPECT_EQ(padded.cover.selected.size(), 5u);
    EXPECT_EQ(padded.padded, 5u);
  }
}

TEST(Rounding, AllOnesWithFullBudgetSelectsEverything) {
  const Instance g = testing::sampleInstance();
  for (auto a : {Algorithm::kRcm, Algorithm::kRdm, Algorithm::kRca}) {
    const auto lp = fakeLp(formulationOf(a), std::vector<double>(8, 1.0), 1.0);
    const RoundingRun run = roundOnce(g, 8, lp, config(a, 3));
    EXPECT_EQ(run.cover.selected.size(), 8u);
    EXPECT_EQ(run.violations, 0);
    EXPECT_EQ(run.padded, 0u);
  }
}

TEST(Rcm2, EpsilonFormula) {
  EXPECT_NEAR(rcm2Epsilon(25.0, 100), 2.0 * std::sqrt(std::log(402.0) / 25.0),
              1e-12);
  EXPECT_NEAR(rcm2Epsilon(25.0, 100), 0.9795, 1e-4);
  EXPECT_DOUBLE_EQ(rcm2Epsilon(2.0, 30), 1.0);  // clamp
  EXPECT_DOUBLE_EQ(rcm2Epsilon(0.0, 30), 1.0);
  EXPECT_LT(rcm2Epsilon(1000.0, 30), 1.0);
}

TEST(Rcm2, ClampedEpsilonSamplesNothing) {
  const Instance g = testing::sampleInstance();
  const auto lp = fakeLp(Formulation::kMinLp, std::vector<double>(8, 0.75), 2.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RoundingRun run = roundRcm2(g, 6, lp, config(Algorithm::kRcm2, seed));
    EXPECT_EQ(run.sampled, 0u);
    ASSERT_TRUE(run.shrink.has_value());
    EXPECT_DOUBLE_EQ(*run.shrink, 1.0);
    EXPECT_EQ(run.cover.selected.size(), 6u);  // padded
  }
}

TEST(Rca2, LambdaAndShrunkenProbabilities) {
  ASSERT_TRUE(rca2Lambda(4.0).has_value());
  EXPECT_DOUBLE_EQ(*rca2Lambda(4.0), 0.5);
  EXPECT_FALSE(rca2Lambda(0.0).has_value());

  // z* = 4 with every x* = 1: each clone is drawn with probability 2/3.
  const std::size_t m = 3000;
  const Instance g(m, 1, std::vector<std::uint8_t>(m, 1));
  const auto lp = fakeLp(Formulation::kAvgLp, std::vector<double>(m, 1.0), 4.0);
  const RoundingRun run =
      roundRca2(g, static_cast<std::int64_t>(m), lp, config(Algorithm::kRca2, 5));
  const double sd = std::sqrt(m * (2.0 / 3.0) * (1.0 / 3.0));
  EXPECT_NEAR(static_cast<double>(run.sampled), m * 2.0 / 3.0, 5 * sd);
  EXPECT_DOUBLE_EQ(*run.shrink, 0.5);
}

TEST(Rca2, ZeroOptimumSamplesNothing) {
  const Instance g = testing::sampleInstance();
  const auto lp = fakeLp(Formulation::kAvgLp, std::vector<double>(8, 0.5), 0.0);
  const RoundingRun run = roundRca2(g, 4, lp, config(Algorithm::kRca2, 9));
  EXPECT_EQ(run.sampled, 0u);
  EXPECT_FALSE(run.shrink.has_value());
  EXPECT_EQ(run.cover.selected.size(), 4u);
}

TEST(Rdm, IntegralSolutionNeedsNoRepair) {
  const Instance g = testing::sampleInstance();
  std::vector<double> x(8, 0.0);
  for (std::size_t i : testing::kD2) x[i] = 1.0;
  const auto lp = fakeLp(Formulation::kMaxLp, x, 1.0);
  const RoundingRun run = roundRdm(g, 6, lp, config(Algorithm::kRdm, 4));
  EXPECT_EQ(run.cover.selected, testing::kD2);
  EXPECT_EQ(run.violations, 0);
}

TEST(Rdm, AlwaysExactlyS) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 3 + rng.below(20);
    const Instance g = testing::randomInstance(rng, m, 5);
    const std::int64_t s = 1 + static_cast<std::int64_t>(rng.below(m));
    std::vector<double> x(m);
    for (double& v : x) v = rng.uniform();
    const auto lp = fakeLp(Formulation::kMaxLp, x, 0.0);
    for (auto repair : {RepairPolicy::kRandom, RepairPolicy::kLowestFraction}) {
      RoundingConfig c = config(Algorithm::kRdm, t, PadPolicy::kNone);
      c.repairPolicy = repair;
      const RoundingRun run = roundRdm(g, s, lp, c);
      EXPECT_EQ(run.cover.selected.size(), static_cast<std::size_t>(s));
      EXPECT_EQ(run.violations, static_cast<std::int64_t>(run.sampled) - s);
    }
  }
}

TEST(Rdm, ZeroMatrixDeviationIsS) {
  const Instance g(6, 3, std::vector<std::uint8_t>(18, 0));
  const auto lp = solveLp(buildMaxLp(g, 4));
  const RoundingRun run = roundRdm(g, 4, lp, config(Algorithm::kRdm, 2));
  EXPECT_EQ(run.cover.objectives.dmaxX2, 4);
}

TEST(Rdm, LowestFractionFillsFromHighestLpValues) {
  // Nothing is sampled (x* tiny), so the deficit fill picks the largest x*.
  const Instance g = testing::sampleInstance();
  std::vector<double> x = {1e-12, 2e-12, 9e-12, 3e-12, 8e-12, 1e-12, 7e-12, 0};
  RoundingConfig c = config(Algorithm::kRdm, 1);
  c.repairPolicy = RepairPolicy::kLowestFraction;
  const RoundingRun run = roundRdm(g, 3, fakeLp(Formulation::kMaxLp, x, 0), c);
  EXPECT_EQ(run.cover.selected, (std::vector<std::size_t>{2, 4, 6}));
}

TEST(Repair, LowestFractionDropsSmallestLpValues) {
  const Instance g = testing::sampleInstance();
  // Every clone is sampled (x* = 1 clamps), surplus 3, lowest x* go first;
  // equal values keep index order.
  std::vector<double> x = {1, 1, 1, 1, 1, 1, 1, 1};
  RoundingConfig c = config(Algorithm::kRcm, 1, PadPolicy::kNone);
  c.repairPolicy = RepairPolicy::kLowestFraction;
  const RoundingRun run = roundRcm(g, 5, fakeLp(Formulation::kMinLp, x, 2), c);
  EXPECT_EQ(run.violations, 3);
  EXPECT_EQ(run.cover.selected, (std::vector<std::size_t>{3, 4, 5, 6, 7}));
}

TEST(Padding, GreedyPicksBestCloneWithIndexTies) {
  // c0 = 00, c1 = 10, c2 = 11, c3 = 01, s = 2: c2 balances best first, then
  // c0 is the only clone keeping both probes at degree 1.
  const Instance g = Instance::fromRows({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto lp = fakeLp(Formulation::kMinLp, std::vector<double>(4, 0.0), 0.0);
  const RoundingRun run =
      roundRcm(g, 2, lp, config(Algorithm::kRcm, 1, PadPolicy::kGreedy));
  EXPECT_EQ(run.cover.selected, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(run.value, (Fraction{1, 1}));
  EXPECT_EQ(run.padded, 2u);
}

TEST(Rounding, FeasibilityMonotoneRepairAndLpBound) {
  Rng rng(17);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = 4 + rng.below(30);
    const std::size_t n = 1 + rng.below(10);
    const Instance g = testing::randomInstance(rng, m, n);
    const std::int64_t s = 1 + static_cast<std::int64_t>(rng.below(m));
    for (Algorithm a : kAll) {
      const FractionalSolution lp = solveLp(buildLp(g, s, formulationOf(a)));
      for (auto pad : {PadPolicy::kNone, PadPolicy::kRandom, PadPolicy::kGreedy}) {
        const RoundingRun run = roundOnce(g, s, lp, config(a, 100 + t, pad));
        const std::size_t size = run.cover.selected.size();
        const bool exact = a == Algorithm::kRdm || pad != PadPolicy::kNone;
        if (exact) {
          EXPECT_EQ(size, static_cast<std::size_t>(s));
        } else {
          EXPECT_LE(size, static_cast<std::size_t>(s));
        }
        EXPECT_EQ(run.value, selectionValue(g, run.cover.selected, objectiveOf(a)));
        if (a == Algorithm::kRdm) {
          EXPECT_GE(run.value.toDouble(), lp.zStar - kTol);
          continue;
        }
        EXPECT_GE(run.violations, 0);
        EXPECT_LE(run.value.toDouble(), lp.zStar + kTol);
        // Dropping one clone lowers each balance term by at most one.
        EXPECT_GE(run.prePadValue.toDouble(),
                  run.preRepairValue.toDouble() - run.violations - 1e-12);
      }
    }
  }
}

TEST(Restarts, DeterministicAndPrefixStable) {
  const Instance g = genRandom(40, 12, 0.5, 7);
  const FractionalSolution lp = solveLp(buildMinLp(g, 20));
  RoundingConfig c = config(Algorithm::kRcm, 42);
  c.restarts = 10;
  const RoundingReport a = roundRestarts(g, 20, lp, c);
  const RoundingReport b = roundRestarts(g, 20, lp, c);
  ASSERT_EQ(a.perRestart.size(), 10u);
  for (std::size_t t = 0; t < 10; ++t) {
    EXPECT_EQ(a.perRestart[t].cover.selected, b.perRestart[t].cover.selected);
  }
  c.restarts = 3;
  const RoundingReport prefix = roundRestarts(g, 20, lp, c);
  for (std::size_t t = 0; t < 3; ++t) {
    EXPECT_EQ(prefix.perRestart[t].cover.selected, a.perRestart[t].cover.selected);
    EXPECT_EQ(prefix.perRestart[t].seed, deriveSeed(42, t));
  }
  EXPECT_GE(a.best.value, prefix.best.value);
}

TEST(Restarts, SingleRestartEqualsDirectCall) {
  const Instance g = genRandom(30, 10, 0.5, 8);
  for (Algorithm a : kAll) {
    const FractionalSolution lp = solveLp(buildLp(g, 12, formulationOf(a)));
    RoundingConfig c = config(a, 5);
    const RoundingReport report = roundRestarts(g, 12, lp, c);
    c.seed = deriveSeed(5, 0);
    const RoundingRun direct = roundOnce(g, 12, lp, c);
    EXPECT_EQ(report.best.cover.selected, direct.cover.selected);
    EXPECT_EQ(report.bestTrial, 0u);
  }
}

TEST(Restarts, BestIsExtremeWithEarliestTie) {
  const Instance g = genRandom(30, 10, 0.5, 9);
  for (Algorithm a : {Algorithm::kRcm, Algorithm::kRdm}) {
    const FractionalSolution lp = solveLp(buildLp(g, 14, formulationOf(a)));
    RoundingConfig c = config(a, 77);
    c.restarts = 25;
    const RoundingReport r = roundRestarts(g, 14, lp, c);
    const ObjectiveKind kind = objectiveOf(a);
    for (std::size_t t = 0; t < r.perRestart.size(); ++t) {
      const Fraction& v = r.perRestart[t].value;
      if (t < r.bestTrial) {
        EXPECT_TRUE(isMaximize(kind) ? v < r.best.value : v > r.best.value);
      } else {
        EXPECT_FALSE(isMaximize(kind) ? v > r.best.value : v < r.best.value);
      }
    }
  }
}

TEST(Restarts, RejectsZeroRestarts) {
  const Instance g = testing::sampleInstance();
  RoundingConfig c = config(Algorithm::kRcm, 1);
  c.restarts = 0;
  EXPECT_THROW(solveEndToEnd(g, 6, ObjectiveKind::kCmin, c), InputError);
}

TEST(SolveEndToEnd, ObjectiveAndAlgorithmChecks) {
  const Instance g = testing::sampleInstance();
  EXPECT_THROW(solveEndToEnd(g, 6, ObjectiveKind::kDavg, config(Algorithm::kRca, 1)),
               UsageError);
  EXPECT_THROW(solveEndToEnd(g, 6, ObjectiveKind::kCmin, config(Algorithm::kRdm, 1)),
               UsageError);
  EXPECT_THROW(solveEndToEnd(g, 9, ObjectiveKind::kCmin, config(Algorithm::kRcm, 1)),
               InputError);
  const auto lp = solveLp(buildMinLp(g, 6));
  EXPECT_THROW(roundRdm(g, 6, lp, config(Algorithm::kRdm, 1)), UsageError);
  EXPECT_THROW(defaultAlgorithmFor(ObjectiveKind::kDavg), UsageError);
}

TEST(Rca, SampleInstanceReachesD2Value) {
  RoundingConfig c = config(Algorithm::kRca, 11);
  c.restarts = 50;
  const RoundingReport r =
      solveEndToEnd(testing::sampleInstance(), 6, ObjectiveKind::kCavg, c);
  EXPECT_GE(r.best.value, (Fraction{18, 7}));
}

TEST(Rca, SingleEntryMatrixIsForcedToZero) {
  const Instance g = Instance::fromRows({{1}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RoundingReport r =
        solveEndToEnd(g, 1, ObjectiveKind::kCavg, config(Algorithm::kRca, seed));
    EXPECT_EQ(r.best.value, (Fraction{0, 1}));
  }
}

TEST(Rcm, RandomMatrixBestOfTen) {
  const Instance g = genRandom(100, 30, 0.5, 2);
  RoundingConfig c = config(Algorithm::kRcm, 3);
  c.restarts = 10;
  const RoundingReport r = solveEndToEnd(g, 50, ObjectiveKind::kCmin, c);
  EXPECT_NEAR(r.lp.zStar, 25.0, kTol);
  EXPECT_GE(r.best.value, (Fraction{21, 1}));
}

TEST(Rcm2, DoesNotBeatRcmOnRandomMatrices) {
  int rcmWins = 0;
  for (std::uint64_t k = 0; k < 5; ++k) {
    const Instance g = genRandom(100, 30, 0.5, 50 + k);
    const FractionalSolution lp = solveLp(buildMinLp(g, 50));
    RoundingConfig c = config(Algorithm::kRcm, k);
    c.restarts = 10;
    const Fraction rcm = roundRestarts(g, 50, lp, c).best.value;
    c.algorithm = Algorithm::kRcm2;
    const Fraction rcm2 = roundRestarts(g, 50, lp, c).best.value;
    if (rcm2 <= rcm) ++rcmWins;
  }
  EXPECT_GE(rcmWins, 4);
}

TEST(Rdm, DeviationBoundHoldsAtLeastHalfTheTime) {
  const Instance g = genRandom(100, 30, 0.5, 4);
  const std::int64_t s = 50;
  const FractionalSolution lp = solveLp(buildMaxLp(g, s));
  const double slack = std::sqrt(4.0 * s * std::log(8.0 * 30)) +
                       std::sqrt(4.0 * s * std::log(8.0));
  int within = 0;
  const int runs = 100;
  for (int t = 0; t < runs; ++t) {
    const RoundingRun run = roundRdm(g, s, lp, config(Algorithm::kRdm, t));
    if (run.value.toDouble() <= lp.zStar + slack) ++within;
  }
  EXPECT_GE(within, runs / 2);
}

TEST(Names, RoundTrip) {
  for (Algorithm a : kAll) EXPECT_EQ(parseAlgorithm(toString(a)), a);
  for (auto p : {PadPolicy::kNone, PadPolicy::kRandom, PadPolicy::kGreedy}) {
    EXPECT_EQ(parsePadPolicy(toString(p)), p);
  }
  for (auto p : {RepairPolicy::kRandom, RepairPolicy::kLowestFraction}) {
    EXPECT_EQ(parseRepairPolicy(toString(p)), p);
  }
  EXPECT_THROW(parseAlgorithm("rcm3"), UsageError);
  EXPECT_EQ(objectiveOf(Algorithm::kRdm), ObjectiveKind::kDmax);
  EXPECT_EQ(defaultAlgorithmFor(ObjectiveKind::kCavg), Algorithm::kRca);
}

}  // namespace
}  // namespace balcover
