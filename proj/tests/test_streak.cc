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

#include "streamweak/error.h"
#include "streamweak/objectives.h"
#include "streamweak/streak.h"
#include "streamweak/threshold_greedy.h"
#include "test_util.h"

namespace streamweak {
namespace {

using testing::Ids;

// Linear scan over a window of exponents using std::pow.
std::vector<std::int64_t> ScanLattice(double m, std::size_t k, double eps,
                                      std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  const double kk = static_cast<double>(k);
  for (std::int64_t i = lo; i <= hi; ++i) {
    const double v = LatticeValue(i, eps);
    if ((1 - eps) * m / (9 * kk * kk) <= v && v <= m * kk) out.push_back(i);
  }
  return out;
}

TEST(LatticeTest, SmallExample) {
  EXPECT_EQ(LatticeExponents(1.0, 1, 0.5),
            (std::vector<std::int64_t>{0, 1, 2, 3, 4}));
  EXPECT_DOUBLE_EQ(LatticeValue(4, 0.5), 0.0625);
}

TEST(LatticeTest, ZeroMaxIsEmpty) {
  EXPECT_TRUE(LatticeExponents(0.0, 3, 0.2).empty());
}

TEST(LatticeTest, MatchesScanForUnitMax) {
  for (double eps : {0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 0.9}) {
    EXPECT_EQ(LatticeExponents(1.0, 1, eps), ScanLattice(1.0, 1, eps, -64, 64))
        << eps;
  }
}

TEST(LatticeTest, MatchesScanOnEdgeValues) {
  // m chosen so that interval endpoints land exactly on lattice points.
  for (double eps : {0.5, 0.25}) {
    for (std::int64_t j = -5; j <= 5; ++j) {
      const double m = LatticeValue(j, eps);
      const auto got = LatticeExponents(m, 2, eps);
      ASSERT_FALSE(got.empty());
      EXPECT_EQ(got, ScanLattice(m, 2, eps, got.front() - 3, got.back() + 3));
    }
  }
}

TEST(LatticeTest, ParameterErrors) {
  EXPECT_THROW(LatticeExponents(1.0, 1, 0.0), ParameterError);
  EXPECT_THROW(LatticeExponents(1.0, 1, 1.0), ParameterError);
  EXPECT_THROW(LatticeExponents(1.0, 1, 0.99999999999999999), ParameterError);
  EXPECT_THROW(LatticeExponents(1.0, 0, 0.5), ParameterError);
  EXPECT_THROW(LatticeExponents(-1.0, 1, 0.5), ParameterError);
}

TEST(BoundTest, ClosedForms) {
  EXPECT_NEAR(ApproximationBound(1.0, 0.0), 0.016281, 1e-6);
  EXPECT_NEAR(AOfGamma(1.0), 0.090226, 1e-6);
  EXPECT_LE(ApproximationBound(1e-6, 0.0), 1e-7);
  EXPECT_GT(ApproximationBound(1e-6, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(ApproximationBound(0.7, 0.5), ApproximationBound(0.7, 0.0) / 2);
  const double b = ApproximationBound(0.5, 0.1);
  EXPECT_GT(b, 0.0);
  EXPECT_LT(b, 0.25);
  EXPECT_THROW(ApproximationBound(0.0, 0.0), ParameterError);
  EXPECT_THROW(ApproximationBound(-1.0, 0.0), ParameterError);
  EXPECT_THROW(AOfGamma(0.0), ParameterError);
}

TEST(BoundTest, AgreesWithNaiveFormulaAwayFromZero) {
  for (double g = 0.05; g <= 1.0; g += 0.05) {
    const double e = std::exp(-g / 2);
    const double naive = g * (3 - e - 2 * std::sqrt(2 - e)) / 2;
    EXPECT_NEAR(ApproximationBound(g, 0.0), naive, 1e-12);
    EXPECT_NEAR(AOfGamma(g), (std::sqrt(2 - e) - 1) / 2, 1e-12);
    const RatioParams p = RatioParams::ForGamma(g);
    EXPECT_NEAR(p.Ratio(0.1), ApproximationBound(g, 0.1), 1e-15);
  }
}

TEST(BoundTest, InstanceBoundExample) {
  EXPECT_NEAR(InstanceCountBound(5, 0.1), 2 + 10 * std::log(1125.0), 1e-9);
}

TEST(StreakTest, ZeroSingletonStoresNothing) {
  ModularObjective f({0, 2});
  Streak s(f, 1, 0.5);
  s.Observe(ElementId(0));
  EXPECT_DOUBLE_EQ(s.m(), 0.0);
  EXPECT_TRUE(s.instances().empty());
  EXPECT_EQ(s.stored(), 0u);
}

TEST(StreakTest, FirstUnitSingletonCreatesFiveInstances) {
  ModularObjective f({1, 0.01});
  Streak s(f, 1, 0.5);
  s.Observe(ElementId(0));
  EXPECT_DOUBLE_EQ(s.m(), 1.0);
  ASSERT_EQ(s.instances().size(), 5u);
  std::int64_t expected = 0;
  for (const auto& [i, tg] : s.instances()) {
    EXPECT_EQ(i, expected++);
    EXPECT_EQ(tg.set().size(), 1u);  // every threshold <= 1 accepts it
  }
  // Small later element: every instance is full, nothing changes.
  s.Observe(ElementId(1));
  EXPECT_EQ(s.instances().size(), 5u);
  EXPECT_EQ(s.u_m()->value, 0u);
}

TEST(StreakTest, SingletonTieReplacesUm) {
  ModularObjective f({2, 2});
  Streak s(f, 2, 0.3);
  s.Observe(ElementId(0));
  s.Observe(ElementId(1));
  EXPECT_EQ(s.u_m()->value, 1u);
}

TEST(StreakTest, NoElementsGivesEmptySet) {
  testing::FnOracle f(3, [](const std::vector<std::uint32_t>& ids) {
    return 0.5 + static_cast<double>(ids.size());
  });
  Streak s(f, 2, 0.3);
  const auto [set, value] = s.Best();
  EXPECT_TRUE(set.empty());
  EXPECT_DOUBLE_EQ(value, 0.5);
  const RunResult r = RunStreak(f, 2, 0.3, {});
  EXPECT_DOUBLE_EQ(r.value, 0.5);
}

TEST(StreakTest, AdversarialHardInstanceGivesOne) {
  HardInstance f({3, 100});
  std::vector<ElementId> order;
  for (std::uint32_t i = 0; i < 3; ++i) order.emplace_back(i);
  for (std::uint32_t i = 6; i < 106; ++i) order.emplace_back(i);
  for (std::uint32_t i = 3; i < 6; ++i) order.emplace_back(i);
  const RunResult r = RunStreak(f, 6, 0.2, order);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(StreakTest, ValueAtLeastBestSingleton) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ModularObjective f({4, 9, 1, 7, 3, 2, 8});
    const RunResult r = RunStreak(f, 3, 0.25, testing::Permuted(7, seed));
    EXPECT_GE(r.value, 9.0);
    EXPECT_DOUBLE_EQ(*r.max_singleton, 9.0);
  }
}

TEST(StreakTest, EpsilonBoundsAreEnforced) {
  ModularObjective f({1, 2});
  EXPECT_THROW(Streak(f, 1, 0.0), ParameterError);
  EXPECT_THROW(Streak(f, 1, 1.0), ParameterError);
  EXPECT_THROW(Streak(f, 0, 0.5), ParameterError);
  EXPECT_THROW(RunStreak(f, 1, 0.5, Ids({0, 0})), StreamError);
}

// Property checks that hold after every observe on random coverage streams.
TEST(StreakTest, PerStepInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CoverageObjective f = testing::RandomCoverage(100 + seed, 16, 30);
    const std::size_t k = 1 + seed % 4;
    const double eps = 0.1 + 0.05 * static_cast<double>(seed % 10);
    Streak s(f, k, eps);
    double max_single = 0.0;
    const auto stream = testing::Permuted(16, seed);
    for (const ElementId u : stream) {
      s.Observe(u);
      max_single = std::max(max_single, f.Value(std::vector<ElementId>{u}));
      std::vector<std::int64_t> keys;
      for (const auto& [i, tg] : s.instances()) {
        keys.push_back(i);
        EXPECT_TRUE(tg.InvariantHolds());
      }
      EXPECT_EQ(keys, LatticeExponents(s.m(), k, eps));
      EXPECT_LE(s.stored(), s.instances().size() * k + 1);
      if (s.m() > 0) {
        EXPECT_LE(static_cast<double>(s.instances().size()),
                  InstanceCountBound(k, eps));
      }
    }
    EXPECT_EQ(s.m(), max_single);
    EXPECT_EQ(s.invariant_violations(), 0u);
  }
}

TEST(StreakTest, LateCreatedInstancesMatchFullReplay) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    CoverageObjective f = testing::RandomCoverage(200 + seed, 14, 24);
    const std::size_t k = 2 + seed % 3;
    const double eps = 0.2;
    const auto stream = testing::Permuted(14, seed);
    Streak s(f, k, eps);
    for (const ElementId u : stream) s.Observe(u);
    for (const auto& [i, tg] : s.instances()) {
      ThresholdGreedy fresh(f, k, tg.tau());
      for (const ElementId u : stream) fresh.Offer(u);
      EXPECT_TRUE(fresh.set().SameSetAs(tg.set())) << "seed " << seed << " i " << i;
    }
  }
}

TEST(StreakTest, FanOutAndCacheDoNotChangeOutput) {
  CoverageObjective f = testing::RandomCoverage(7, 16, 30);
  const auto stream = testing::Permuted(16, 3);
  const RunResult base = RunStreak(f, 3, 0.2, stream);
  StreakOptions threaded;
  threaded.threads = 4;
  const RunResult t = RunStreak(f, 3, 0.2, stream, threaded);
  StreakOptions cached;
  cached.cache_capacity = 1024;
  const RunResult c = RunStreak(f, 3, 0.2, stream, cached);
  EXPECT_EQ(base.set.SortedIds(), t.set.SortedIds());
  EXPECT_EQ(base.oracle_calls, t.oracle_calls);
  EXPECT_EQ(base.set.SortedIds(), c.set.SortedIds());
  EXPECT_DOUBLE_EQ(base.value, c.value);
  EXPECT_LE(c.oracle_calls, base.oracle_calls);
}

TEST(StreakTest, CallCountBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CoverageObjective f = testing::RandomCoverage(300 + seed, 16, 30);
    const auto stream = testing::Permuted(16, seed);
    Streak s(f, 3, 0.3);
    for (const ElementId u : stream) s.Observe(u);
    const RunResult r = RunStreak(f, 3, 0.3, stream);
    EXPECT_LE(r.oracle_calls,
              16 * (1 + r.instances_peak) + s.instances().size() + 2);
  }
}

TEST(StreakTest, BestPrefersSmallerExponentOnTies) {
  ModularObjective f({1, 1, 1, 1});
  Streak s(f, 2, 0.5);
  for (std::uint32_t i = 0; i < 4; ++i) s.Observe(ElementId(i));
  const auto [set, value] = s.Best();
  EXPECT_DOUBLE_EQ(value, 2.0);
  // First instance with value 2, scanning exponents upward.
  for (const auto& [i, tg] : s.instances()) {
    if (tg.value() == 2.0) {
      EXPECT_TRUE(set.SameSetAs(tg.set()));
      break;
    }
  }
}

}  // namespace
}  // namespace streamweak
