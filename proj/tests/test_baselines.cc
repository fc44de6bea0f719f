// Copyright 2026 The streamweak Authors
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

#include "streamweak/baselines.h"
#include "streamweak/error.h"
#include "streamweak/gamma.h"
#include "streamweak/objectives.h"
#include "streamweak/streak.h"
#include "streamweak/threshold_greedy.h"
#include "test_util.h"

namespace streamweak {
namespace {

using testing::Ids;

TEST(RandomSubsetTest, Examples) {
  ModularObjective f({1, 2, 3, 4});
  CountingOracle counting(f);
  const RunResult r = RunRandomSubset(counting, 2, Ids({3, 1, 2, 0}));
  EXPECT_EQ(r.set.SortedIds(), (std::vector<std::uint32_t>{1, 3}));
  EXPECT_DOUBLE_EQ(r.value, 6.0);
  EXPECT_EQ(r.oracle_calls, 1u);
  EXPECT_EQ(RunRandomSubset(f, 9, Ids({2, 0})).set.size(), 2u);
  EXPECT_TRUE(RunRandomSubset(f, 0, Ids({2, 0})).set.empty());
}

TEST(LocalSearchTest, HandSimulation) {
  ModularObjective f({1, 5, 2, 4});
  const RunResult r = RunLocalSearch(f, 2, Ids({0, 1, 2, 3}));
  EXPECT_EQ(r.set.SortedIds(), (std::vector<std::uint32_t>{1, 3}));
  EXPECT_DOUBLE_EQ(r.value, 9.0);
}

TEST(LocalSearchTest, ExactlyKElementsMakesNoSwaps) {
  ModularObjective f({1, 5, 2, 4});
  CountingOracle counting(f);
  const RunResult r = RunLocalSearch(counting, 4, Ids({3, 0, 1, 2}));
  EXPECT_EQ(r.set.size(), 4u);
  EXPECT_EQ(r.oracle_calls, 1u);
}

TEST(LocalSearchTest, ModularFindsTopK) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Xoshiro256 rng(seed);
    std::vector<double> w(10);
    for (double& x : w) x = rng.Uniform() * 10;
    ModularObjective f(w);
    const std::size_t k = 1 + seed % 5;
    const RunResult r = RunLocalSearch(f, k, testing::Permuted(10, seed));
    EXPECT_NEAR(r.value, testing::MaskBruteOpt(f, k), 1e-9);
  }
}

TEST(LocalSearchTest, ThreadsDoNotChangeResult) {
  CoverageObjective f = testing::RandomCoverage(3, 16, 30);
  const auto stream = testing::Permuted(16, 2);
  const RunResult a = RunLocalSearch(f, 4, stream);
  const RunResult b = RunLocalSearch(f, 4, stream, {4});
  EXPECT_EQ(a.set.SortedIds(), b.set.SortedIds());
  EXPECT_EQ(a.oracle_calls, b.oracle_calls);
}

// Sets A={1,2,3}, B={3,4}, C={5} over items 1..5 (item 0 unused).
CoverageObjective ThreeSets() {
  return CoverageObjective({{1, 2, 3}, {3, 4}, {5}}, {0, 1, 1, 1, 1, 1});
}

TEST(FullGreedyTest, TieBreaksBySmallestId) {
  CoverageObjective f = ThreeSets();
  const RunResult r = RunFullGreedy(f, 2);
  EXPECT_EQ(r.set.SortedIds(), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_DOUBLE_EQ(r.value, 4.0);
  const RunResult lazy = RunFullGreedy(f, 2, {true, 1});
  EXPECT_EQ(lazy.set.SortedIds(), r.set.SortedIds());
}

TEST(FullGreedyTest, ModularAndLargeBudget) {
  ModularObjective f({3, 0, 7, 1});
  EXPECT_EQ(RunFullGreedy(f, 2).set.SortedIds(), (std::vector<std::uint32_t>{0, 2}));
  // Zero-marginal element is never taken.
  EXPECT_EQ(RunFullGreedy(f, 10).set.SortedIds(),
            (std::vector<std::uint32_t>{0, 2, 3}));
}

TEST(FullGreedyTest, LazyMatchesExactOnSubmodular) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CoverageObjective f = testing::RandomCoverage(seed, 16, 30);
    const RunResult a = RunFullGreedy(f, 4);
    const RunResult b = RunFullGreedy(f, 4, {true, 1});
    EXPECT_EQ(a.set.SortedIds(), b.set.SortedIds());
    EXPECT_LE(b.oracle_calls, a.oracle_calls);
  }
}

TEST(FullGreedyTest, ApproximationOnSubmodularInstances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CoverageObjective f = testing::RandomCoverage(50 + seed, 12, 20);
    ASSERT_DOUBLE_EQ(GammaExact(f, 12).value, 1.0);
    const std::size_t k = 1 + seed % 4;
    const double opt = testing::MaskBruteOpt(f, k);
    EXPECT_GE(RunFullGreedy(f, k).value, (1 - 1 / std::exp(1.0)) * opt - 1e-9);
  }
}

TEST(BruteForceTest, Examples) {
  CoverageObjective f = ThreeSets();
  const OptResult r = BruteForceOpt(f, 2);
  EXPECT_DOUBLE_EQ(r.value, 4.0);
  EXPECT_EQ(r.set.SortedIds(), (std::vector<std::uint32_t>{0, 1}));
  HardInstance hard({2, 0});
  EXPECT_DOUBLE_EQ(BruteForceOpt(hard, 4).value, 4.0);
  ModularObjective m({2, 3});
  const OptResult zero = BruteForceOpt(m, 0);
  EXPECT_TRUE(zero.set.empty());
  EXPECT_DOUBLE_EQ(zero.value, 0.0);
}

TEST(BruteForceTest, MatchesMaskEnumeration) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    CoverageObjective f = testing::RandomCoverage(seed, 12, 18);
    const std::size_t k = 1 + seed % 4;
    EXPECT_DOUBLE_EQ(BruteForceOpt(f, k).value, testing::MaskBruteOpt(f, k));
  }
}

TEST(BruteForceTest, DominatesOtherAlgorithms) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CoverageObjective f = testing::RandomCoverage(70 + seed, 14, 20);
    const std::size_t k = 3;
    const auto stream = testing::Permuted(14, seed);
    const double opt = BruteForceOpt(f, k).value;
    EXPECT_GE(opt, RunStreak(f, k, 0.2, stream).value);
    EXPECT_GE(opt, RunLocalSearch(f, k, stream).value);
    EXPECT_GE(opt, RunFullGreedy(f, k).value);
    EXPECT_GE(opt, RunRandomSubset(f, k, stream).value);
    EXPECT_GE(opt, RunThresholdGreedy(f, k, opt / 2, stream).value);
  }
}

TEST(BruteForceTest, GuardRaisesCapacityError) {
  ModularObjective big(std::vector<double>(kBruteForceMaxN + 1, 1.0));
  EXPECT_THROW(BruteForceOpt(big, 2), CapacityError);
  ModularObjective wide(std::vector<double>(kBruteForceMaxN, 1.0));
  EXPECT_EQ(CountSubsetsUpTo(kBruteForceMaxN, 12), 9740686u);
  EXPECT_GT(CountSubsetsUpTo(kBruteForceMaxN, 13), kBruteForceMaxSubsets);
  EXPECT_THROW(BruteForceOpt(wide, 13), CapacityError);
  EXPECT_EQ(CountSubsetsUpTo(4, 2), 11u);
}

}  // namespace
}  // namespace streamweak
