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

#include <numeric>

#include "balcover/generators.hpp"
#include "balcover/lp.hpp"
#include "balcover/oracle.hpp"
#include "test_util.hpp"

namespace balcover {
namespace {

using testing::sampleInstance;

constexpr double kTol = 1e-7;

FractionalSolution solve(const Instance& g, std::int64_t s, Formulation f) {
  return solveLp(buildLp(g, s, f));
}

TEST(BuildLp, ShapesOnSampleInstance) {
  const Instance g = sampleInstance();
  const LpProblem min = buildMinLp(g, 6);
  EXPECT_EQ(min.numVariables(), 9u);
  EXPECT_EQ(min.numConstraints(), 15u);
  EXPECT_EQ(min.sense, Sense::kMaximize);
  EXPECT_EQ(min.constraints.back().relation, Relation::kLessEqual);

  const LpProblem max = buildMaxLp(g, 6);
  EXPECT_EQ(max.numVariables(), 9u);
  EXPECT_EQ(max.numConstraints(), 15u);
  EXPECT_EQ(max.sense, Sense::kMinimize);
  EXPECT_EQ(max.constraints.back().relation, Relation::kEqual);

  const LpProblem avg = buildAvgLp(g, 6);
  EXPECT_EQ(avg.numVariables(), 15u);
  EXPECT_EQ(avg.numConstraints(), 15u);
  EXPECT_DOUBLE_EQ(avg.objective.back(), 1.0 / 7.0);
  for (const auto* lp : {&min, &max, &avg}) {
    EXPECT_EQ(lp->cloneVariables, 8u);
    EXPECT_NO_THROW(lp->validate());
  }
}

TEST(BuildLp, RowCoefficients) {
  // Probe 1 of the sample matrix is hit by clones 1,2,3,5,6,8.
  const LpProblem min = buildMinLp(sampleInstance(), 6);
  const auto& first = min.constraints[0].coefficients;
  const auto& second = min.constraints[7].coefficients;
  EXPECT_EQ(first, (std::vector<double>{-1, -1, -1, 0, -1, -1, 0, -1, 1}));
  EXPECT_EQ(second, (std::vector<double>{0, 0, 0, -1, 0, 0, -1, 0, 1}));
  const LpProblem max = buildMaxLp(sampleInstance(), 6);
  EXPECT_DOUBLE_EQ(max.constraints[0].rhs, -3.0);
  EXPECT_DOUBLE_EQ(max.constraints[7].rhs, 3.0);
}

TEST(BuildLp, BudgetOutOfRange) {
  const Instance g = sampleInstance();
  for (auto f : {Formulation::kMinLp, Formulation::kMaxLp, Formulation::kAvgLp}) {
    EXPECT_THROW(buildLp(g, 0, f), InputError);
    EXPECT_THROW(buildLp(g, 9, f), InputError);
  }
  EXPECT_THROW(buildLp(g, 3, Formulation::kCustom), UsageError);
}

TEST(BuildLp, NoProbesIsRejectedAtInstanceConstruction) {
  try {
    Instance(1, 0, {});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("no probes"), std::string::npos);
  }
}

TEST(SolveLp, SingleCloneSingleProbe) {
  // a = [1]: the second family reads z <= 0, so MinLP and AvgLP are 0;
  // MaxLP forces x = 1 and z >= |1 - 1/2|.
  const Instance g = Instance::fromRows({{1}});
  EXPECT_NEAR(solve(g, 1, Formulation::kMinLp).zStar, 0.0, kTol);
  EXPECT_NEAR(solve(g, 1, Formulation::kAvgLp).zStar, 0.0, kTol);
  EXPECT_NEAR(solve(g, 1, Formulation::kMaxLp).zStar, 0.5, kTol);
}

TEST(SolveLp, ForcedValues) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 2 + rng.below(10);
    const std::int64_t s = 1 + static_cast<std::int64_t>(rng.below(m));
    const Instance zeros(m, 4, std::vector<std::uint8_t>(m * 4, 0));
    EXPECT_NEAR(solve(zeros, s, Formulation::kMaxLp).zStar, s / 2.0, kTol);
    EXPECT_NEAR(solve(zeros, s, Formulation::kAvgLp).zStar, 0.0, kTol);
    EXPECT_NEAR(solve(zeros, s, Formulation::kMinLp).zStar, 0.0, kTol);
    // An all-ones column forces deg = s for that probe.
    auto bits = testing::randomInstance(rng, m, 4).adjacency();
    for (std::size_t i = 0; i < m; ++i) bits[i * 4 + 2] = 1;
    const Instance ones(m, 4, bits);
    EXPECT_NEAR(solve(ones, s, Formulation::kMaxLp).zStar, s / 2.0, kTol);
  }
}

TEST(SolveLp, SampleInstance) {
  const Instance g = sampleInstance();
  for (auto f : {Formulation::kMinLp, Formulation::kMaxLp, Formulation::kAvgLp}) {
    const LpProblem lp = buildLp(g, 6, f);
    const FractionalSolution sol = solveLp(lp);
    EXPECT_NEAR(testing::dualBound(lp, sol.raw.duals), sol.zStar, 1e-9)
        << toString(f);
    EXPECT_TRUE(testing::feasible(lp, sol.raw.x, 1e-9)) << toString(f);
  }
  // D2 is integral with cmin = 2 and cavg = 18/7, so the LPs are at least that.
  EXPECT_GE(solve(g, 6, Formulation::kMinLp).zStar, 2.0 - kTol);
  EXPECT_GE(solve(g, 6, Formulation::kAvgLp).zStar, 18.0 / 7.0 - kTol);
}

TEST(SolveLp, FractionalSolutionInvariants) {
  Rng rng(12);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = 2 + rng.below(25);
    const std::size_t n = 1 + rng.below(12);
    const Instance g = testing::randomInstance(rng, m, n, 0.1 + 0.8 * rng.uniform());
    const std::int64_t s = 1 + static_cast<std::int64_t>(rng.below(m));
    for (auto f : {Formulation::kMinLp, Formulation::kMaxLp, Formulation::kAvgLp}) {
      const LpProblem lp = buildLp(g, s, f);
      const FractionalSolution sol = solveLp(lp);
      ASSERT_EQ(sol.x.size(), m);
      EXPECT_EQ(sol.formulation, f);
      double sum = 0.0;
      for (double x : sol.x) {
        EXPECT_GE(x, -1e-9);
        EXPECT_LE(x, 1 + 1e-9);
        sum += x;
      }
      if (f == Formulation::kMaxLp) {
        EXPECT_NEAR(sum, static_cast<double>(s), 1e-9);
      } else {
        EXPECT_LE(sum, static_cast<double>(s) + 1e-9);
      }
      EXPECT_TRUE(testing::feasible(lp, sol.raw.x, 1e-9));
      EXPECT_NEAR(testing::dualBound(lp, sol.raw.duals), sol.zStar, 1e-7)
          << toString(f) << " trial " << t;
      EXPECT_LE(sol.stats.primalResidual, 1e-9);
    }
  }
}

TEST(SolveLp, DominatesExactOptima) {
  Rng rng(404);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 2 + rng.below(9);
    const std::size_t n = 1 + rng.below(6);
    const Instance g = testing::randomInstance(rng, m, n);
    for (std::int64_t s = 1; s <= static_cast<std::int64_t>(m); ++s) {
      const auto cmin = exactOptimum(g, s, ObjectiveKind::kCmin).optimum;
      const auto cavg = exactOptimum(g, s, ObjectiveKind::kCavg).optimum;
      const auto dmax = exactOptimum(g, s, ObjectiveKind::kDmax).optimum;
      EXPECT_GE(solve(g, s, Formulation::kMinLp).zStar, cmin.toDouble() - kTol);
      EXPECT_GE(solve(g, s, Formulation::kAvgLp).zStar, cavg.toDouble() - kTol);
      EXPECT_LE(solve(g, s, Formulation::kMaxLp).zStar, dmax.toDouble() + kTol);
    }
  }
}

TEST(SolveLp, InvariantUnderProbeReplication) {
  Rng rng(9);
  for (int t = 0; t < 15; ++t) {
    const Instance g = testing::randomInstance(rng, 10, 5);
    const std::int64_t s = 2 + static_cast<std::int64_t>(rng.below(8));
    for (std::size_t r : {2u, 3u}) {
      const Instance gr = replicateProbes(g, r);
      for (auto f : {Formulation::kMinLp, Formulation::kMaxLp, Formulation::kAvgLp}) {
        EXPECT_NEAR(solve(g, s, f).zStar, solve(gr, s, f).zStar, kTol);
      }
    }
  }
}

TEST(SolveLp, RandomMatrixTracksHalfBudget) {
  const Instance g = genRandom(100, 30, 0.5, 1);
  EXPECT_NEAR(solve(g, 20, Formulation::kMinLp).zStar, 10.0, kTol);
  EXPECT_NEAR(solve(g, 50, Formulation::kMinLp).zStar, 25.0, kTol);
}

TEST(SolveLp, DeterministicBitForBit) {
  const Instance g = genRandom(60, 20, 0.5, 3);
  const LpProblem lp = buildMinLp(g, 30);
  const FractionalSolution a = solveLp(lp);
  const FractionalSolution b = solveLp(lp);
  EXPECT_EQ(a.raw.x, b.raw.x);
  EXPECT_EQ(a.raw.basis, b.raw.basis);
  EXPECT_EQ(a.zStar, b.zStar);
}

TEST(SolveLp, NonOptimalOutcomesAreNumericalErrors) {
  LpProblem lp;
  lp.addVariable("x", 0, 1, 1);
  lp.addConstraint({1}, Relation::kGreaterEqual, 2);
  EXPECT_THROW(solveLp(lp), NumericalError);
}

TEST(FormulationFor, DavgHasNoRelaxation) {
  EXPECT_EQ(formulationFor(ObjectiveKind::kCmin), Formulation::kMinLp);
  EXPECT_EQ(formulationFor(ObjectiveKind::kCavg), Formulation::kAvgLp);
  EXPECT_EQ(formulationFor(ObjectiveKind::kDmax), Formulation::kMaxLp);
  EXPECT_THROW(formulationFor(ObjectiveKind::kDavg), UsageError);
}

}  // namespace
}  // namespace balcover
