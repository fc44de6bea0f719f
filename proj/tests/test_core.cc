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
#include <limits>
#include <thread>
#include <unordered_set>

#include "streamweak/error.h"
#include "streamweak/objectives.h"
#include "streamweak/oracle.h"
#include "streamweak/types.h"
#include "test_util.h"

namespace streamweak {
namespace {

using testing::FnOracle;
using testing::Ids;

TEST(GroundSetTest, RejectsEmpty) {
  EXPECT_THROW(GroundSet(0), ParameterError);
  GroundSet g(3, {"a", "b", "c"});
  EXPECT_EQ(g.Label(ElementId(1)), "b");
  EXPECT_TRUE(g.Contains(ElementId(2)));
  EXPECT_FALSE(g.Contains(ElementId(3)));
  EXPECT_THROW(GroundSet(2, {"only-one"}), ParameterError);
}

TEST(SubsetTest, KeepsInsertionOrderAndRejectsDuplicates) {
  Subset s(10);
  s.Insert(ElementId(4));
  s.Insert(ElementId(1));
  s.Insert(ElementId(7));
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.members()[0].value, 4u);
  EXPECT_EQ(s.members()[1].value, 1u);
  EXPECT_EQ(s.SortedIds(), (std::vector<std::uint32_t>{1, 4, 7}));
  EXPECT_THROW(s.Insert(ElementId(4)), PreconditionError);
  EXPECT_THROW(s.Insert(ElementId(10)), PreconditionError);
  s.Erase(ElementId(1));
  EXPECT_FALSE(s.Contains(ElementId(1)));
  EXPECT_EQ(s.size(), 2u);
  const Subset t = s.With(ElementId(1));
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(t.SameSetAs(Subset::Of(10, {7, 1, 4})));
  s.Clear();
  EXPECT_TRUE(s.empty());
}

TEST(SubsetTest, HashedMembershipAboveBitsetLimit) {
  const std::size_t big = Subset::kBitsetLimit + 5;
  Subset s(big);
  s.Insert(ElementId(static_cast<std::uint32_t>(big - 1)));
  s.Insert(ElementId(3));
  EXPECT_TRUE(s.Contains(ElementId(static_cast<std::uint32_t>(big - 1))));
  EXPECT_FALSE(s.Contains(ElementId(4)));
  EXPECT_THROW(s.Insert(ElementId(3)), PreconditionError);
  s.Erase(ElementId(3));
  EXPECT_FALSE(s.Contains(ElementId(3)));
}

TEST(ElementIdTest, HashAndOrder) {
  std::unordered_set<ElementId> set{ElementId(1), ElementId(2), ElementId(1)};
  EXPECT_EQ(set.size(), 2u);
  EXPECT_LT(ElementId(1), ElementId(2));
  const std::vector<std::uint32_t> raw{3, 0};
  EXPECT_EQ(ToRawIds(ToElementIds(raw)), raw);
}

TEST(EvaluateTest, ModularAndCoverageExamples) {
  ModularObjective modular({3, 1, 2});
  EXPECT_DOUBLE_EQ(Evaluate(modular, Subset::Of(3, {0, 2})), 5.0);
  EXPECT_DOUBLE_EQ(Evaluate(modular, Subset(3)), 0.0);
  CoverageObjective coverage({{0, 1}, {1, 2}}, {1, 1, 1});
  EXPECT_DOUBLE_EQ(Evaluate(coverage, Subset::Of(2, {0, 1})), 3.0);
}

TEST(EvaluateTest, ViolationCarriesSubset) {
  for (double bad : {std::nan(""), -1.0, std::numeric_limits<double>::infinity()}) {
    FnOracle f(4, [bad](const std::vector<std::uint32_t>& ids) {
      return ids.size() == 2 ? bad : 1.0;
    });
    try {
      Evaluate(f, Subset::Of(4, {3, 1}));
      FAIL() << "expected OracleViolation";
    } catch (const OracleViolation& e) {
      EXPECT_EQ(e.subset(), (std::vector<std::uint32_t>{1, 3}));
      EXPECT_EQ(e.code(), ErrorCode::kOracle);
    }
  }
}

TEST(MarginalTest, Examples) {
  ModularObjective modular({3, 1, 2});
  EXPECT_DOUBLE_EQ(Marginal(modular, Subset::Of(3, {1}), ElementId(0)), 3.0);
  CoverageObjective coverage({{0, 1}, {1, 2}}, {1, 1, 1});
  EXPECT_DOUBLE_EQ(Marginal(coverage, Subset::Of(2, {0}), ElementId(1)), 1.0);
  HardInstance hard({2, 0});
  const HardInstanceParams& p = hard.params();
  Subset base(hard.size());
  base.Insert(p.V(0));
  EXPECT_DOUBLE_EQ(Marginal(hard, base, p.U(0)), 1.0);
  EXPECT_THROW(Marginal(modular, Subset::Of(3, {1}), ElementId(1)),
               PreconditionError);
}

TEST(MarginalTest, SuppliedBaseValueSavesACall) {
  ModularObjective modular({3, 1, 2});
  CountingOracle counting(modular);
  const Subset base = Subset::Of(3, {1});
  Marginal(counting, base, ElementId(0));
  EXPECT_EQ(counting.calls(), 2u);
  Marginal(counting, base, ElementId(0), 1.0);
  EXPECT_EQ(counting.calls(), 3u);
}

TEST(MarginalTest, AdditivityProperty) {
  CoverageObjective f = testing::RandomCoverage(5, 12, 20);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::vector<ElementId> order = testing::Permuted(12, seed);
    Subset s(12);
    for (std::size_t i = 0; i + 1 < order.size() && i < 6; ++i) s.Insert(order[i]);
    const ElementId u = order.back();
    const double lhs = Evaluate(f, s.With(u));
    const double rhs = Evaluate(f, s) + Marginal(f, s, u);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(CachingOracleTest, MemoContract) {
  ModularObjective modular({3, 1, 2, 5});
  CountingOracle counting(modular);
  CachingOracle cache(counting, 16);
  const auto a = Ids({0, 2});
  const auto b = Ids({2, 0});
  EXPECT_DOUBLE_EQ(cache.Value(a), 5.0);
  EXPECT_DOUBLE_EQ(cache.Value(a), 5.0);
  EXPECT_EQ(counting.calls(), 1u);
  EXPECT_EQ(cache.cache_hits(), 1u);
  EXPECT_DOUBLE_EQ(cache.Value(b), 5.0);
  EXPECT_EQ(counting.calls(), 1u);
  EXPECT_EQ(cache.cache_hits(), 2u);
  EXPECT_EQ(cache.stats().cache_hits, 2u);
}

TEST(CachingOracleTest, CapacityZeroPassesThrough) {
  ModularObjective modular({3, 1, 2});
  CountingOracle counting(modular);
  CachingOracle cache(counting, 0);
  cache.Value(Ids({1}));
  cache.Value(Ids({1}));
  EXPECT_EQ(counting.calls(), 2u);
  EXPECT_EQ(cache.entries(), 0u);
}

TEST(CachingOracleTest, EvictsLeastRecentlyUsed) {
  ModularObjective modular({1, 2, 3, 4});
  CountingOracle counting(modular);
  CachingOracle cache(counting, 2);
  cache.Value(Ids({0}));
  cache.Value(Ids({1}));
  cache.Value(Ids({0}));  // touch 0; 1 is now oldest
  cache.Value(Ids({2}));  // evicts 1
  EXPECT_EQ(cache.entries(), 2u);
  EXPECT_EQ(counting.calls(), 3u);
  cache.Value(Ids({0}));
  EXPECT_EQ(counting.calls(), 3u);
  cache.Value(Ids({1}));
  EXPECT_EQ(counting.calls(), 4u);
}

TEST(CachingOracleTest, TransparentOverRandomQueries) {
  CoverageObjective f = testing::RandomCoverage(9, 10, 15);
  CoverageObjective g = testing::RandomCoverage(9, 10, 15);
  CachingOracle cache(f, 7);
  Xoshiro256 rng(3);
  for (int q = 0; q < 500; ++q) {
    const std::uint64_t mask = rng.Below(1 << 10);
    std::vector<ElementId> ids = testing::FromMask(mask);
    Shuffle(ids, rng);
    EXPECT_EQ(cache.Value(ids), g.Value(ids));
  }
}

TEST(CountingOracleTest, CountsScriptedSequenceAcrossThreads) {
  ModularObjective modular({1, 2, 3});
  CountingOracle counting(modular);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 250; ++i) counting.Value(Ids({1}));
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(counting.calls(), 1000u);
  EXPECT_EQ(counting.stats().calls, 1000u);
}

}  // namespace
}  // namespace streamweak
