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

#include "streamweak/error.h"
#include "streamweak/objectives.h"
#include "streamweak/threshold_greedy.h"
#include "test_util.h"

namespace streamweak {
namespace {

using testing::FnOracle;
using testing::Ids;

TEST(ThresholdGreedyTest, Construction) {
  ModularObjective f({5, 1, 4, 3});
  ThresholdGreedy tg(f, 2, 6.0);
  EXPECT_TRUE(tg.set().empty());
  EXPECT_DOUBLE_EQ(tg.value(), 0.0);
  EXPECT_NO_THROW(ThresholdGreedy(f, 1, 0.0));
  EXPECT_THROW(ThresholdGreedy(f, 2, -1.0), ParameterError);
  EXPECT_THROW(ThresholdGreedy(f, 0, 1.0), ParameterError);
  EXPECT_THROW(ThresholdGreedy(f, 1, std::nan("")), ParameterError);
}

TEST(ThresholdGreedyTest, HandSimulatedModular) {
  ModularObjective f({5, 1, 4, 3});
  CountingOracle counting(f);
  ThresholdGreedy tg(counting, 2, 6.0);
  EXPECT_FALSE(tg.Offer(ElementId(1)));
  EXPECT_TRUE(tg.Offer(ElementId(0)));
  EXPECT_TRUE(tg.Offer(ElementId(2)));
  const auto calls_when_full = counting.calls();
  EXPECT_FALSE(tg.Offer(ElementId(3)));
  EXPECT_EQ(counting.calls(), calls_when_full);
  EXPECT_EQ(tg.set().SortedIds(), (std::vector<std::uint32_t>{0, 2}));
  EXPECT_DOUBLE_EQ(tg.value(), 9.0);
  EXPECT_TRUE(tg.full());
}

TEST(ThresholdGreedyTest, RunMatchesSimulationAndCallBound) {
  ModularObjective f({5, 1, 4, 3});
  const auto stream = Ids({1, 0, 2, 3});
  const RunResult r = RunThresholdGreedy(f, 2, 6.0, stream);
  EXPECT_DOUBLE_EQ(r.value, 9.0);
  EXPECT_LE(r.oracle_calls, 5u);
  EXPECT_EQ(r.set.SortedIds(), (std::vector<std::uint32_t>{0, 2}));
}

TEST(ThresholdGreedyTest, ZeroThresholdTakesFirstK) {
  ModularObjective f({5, 0, 4, 3});
  const RunResult r = RunThresholdGreedy(f, 2, 0.0, Ids({3, 1, 0, 2}));
  EXPECT_EQ(r.set.SortedIds(), (std::vector<std::uint32_t>{1, 3}));
}

TEST(ThresholdGreedyTest, HardInstanceExample) {
  HardInstance f({2, 0});
  const HardInstanceParams& p = f.params();
  ThresholdGreedy tg(f, 2, 2.0);
  EXPECT_FALSE(tg.Offer(p.U(0)));
  EXPECT_TRUE(tg.Offer(p.V(0)));
  EXPECT_DOUBLE_EQ(tg.value(), 1.0);
}

TEST(ThresholdGreedyTest, TieIsAccepted) {
  ModularObjective f({3, 3});
  ThresholdGreedy tg(f, 2, 6.0);
  EXPECT_TRUE(tg.Offer(ElementId(0)));
}

TEST(ThresholdGreedyTest, EmptyStreamAndUnreachableThreshold) {
  FnOracle f(3, [](const std::vector<std::uint32_t>& ids) {
    return 2.0 + static_cast<double>(ids.size());
  });
  const RunResult empty = RunThresholdGreedy(f, 2, 1.0, {});
  EXPECT_TRUE(empty.set.empty());
  EXPECT_DOUBLE_EQ(empty.value, 2.0);
  const RunResult none = RunThresholdGreedy(f, 2, 100.0, testing::Iota(3));
  EXPECT_TRUE(none.set.empty());
}

TEST(ThresholdGreedyTest, DuplicateStreamIsRejected) {
  ModularObjective f({1, 2, 3});
  EXPECT_THROW(RunThresholdGreedy(f, 2, 1.0, Ids({0, 1, 0})), StreamError);
  EXPECT_THROW(RunThresholdGreedy(f, 2, 1.0, Ids({0, 3})), StreamError);
}

TEST(ThresholdGreedyTest, KnownEmptyValueMakesNoCall) {
  ModularObjective f({1, 2, 3});
  CountingOracle counting(f);
  ThresholdGreedy tg(counting, 2, 1.0, 0.0);
  EXPECT_EQ(counting.calls(), 0u);
}

TEST(ThresholdGreedyTest, ParanoidModeDetectsDrift) {
  int calls = 0;
  FnOracle f(3, [&calls](const std::vector<std::uint32_t>& ids) {
    ++calls;
    return static_cast<double>(ids.size()) + 0.001 * calls;
  });
  ThresholdGreedy tg(f, 2, 0.0, ThresholdGreedyOptions{true});
  EXPECT_THROW(tg.Offer(ElementId(0)), OracleError);
}

TEST(ThresholdGreedyTest, ObservationThreeOnRandomCoverage) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    CoverageObjective f = testing::RandomCoverage(seed, 14, 25);
    const std::size_t k = 1 + seed % 5;
    const double tau = 2.0 + static_cast<double>(seed % 7) * 3.0;
    ThresholdGreedy tg(f, k, tau);
    double last = tg.value();
    for (const ElementId u : testing::Permuted(14, seed)) {
      const bool accepted = tg.Offer(u);
      ASSERT_TRUE(tg.InvariantHolds());
      EXPECT_GE(tg.value(), tau * static_cast<double>(tg.set().size()) /
                                static_cast<double>(k) * (1 - 1e-9));
      if (accepted) EXPECT_GT(tg.value(), last);
      EXPECT_GE(tg.value(), last);
      last = tg.value();
    }
    if (tg.full()) EXPECT_GE(tg.value(), tau * (1 - 1e-9));
    EXPECT_EQ(tg.invariant_violations(), 0u);
    EXPECT_NEAR(tg.value(), Evaluate(f, tg.set()), 1e-9);
  }
}

TEST(ThresholdGreedyTest, Deterministic) {
  CoverageObjective f = testing::RandomCoverage(2, 14, 25);
  const auto stream = testing::Permuted(14, 4);
  const RunResult a = RunThresholdGreedy(f, 3, 9.0, stream);
  const RunResult b = RunThresholdGreedy(f, 3, 9.0, stream);
  EXPECT_EQ(a.set.SortedIds(), b.set.SortedIds());
  EXPECT_EQ(a.oracle_calls, b.oracle_calls);
}

}  // namespace
}  // namespace streamweak
