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

#ifndef STREAMWEAK_BASELINES_H_
#define STREAMWEAK_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "streamweak/oracle.h"
#include "streamweak/result.h"
#include "streamweak/types.h"

namespace streamweak {

// Keeps the first min(k, |stream|) elements. One evaluation at the end.
RunResult RunRandomSubset(Valuation& oracle, std::size_t k,
                          std::span<const ElementId> stream);

struct LocalSearchOptions {
  unsigned threads = 1;
};

// Fills a buffer with the first k elements, then for each later element
// performs the single swap with the largest strictly positive improvement.
RunResult RunLocalSearch(Valuation& oracle, std::size_t k,
                         std::span<const ElementId> stream,
                         LocalSearchOptions options = {});

struct GreedyOptions {
  // Lazy (priority-queue) evaluation. Only exact for submodular oracles.
  bool lazy = false;
  unsigned threads = 1;
};

// Offline forward selection over the whole ground set: k rounds of argmax
// marginal gain, ties to the smallest id, stopping once no gain is positive.
RunResult RunFullGreedy(Valuation& oracle, std::size_t k,
                        GreedyOptions options = {});

// Enumeration guards for BruteForceOpt.
inline constexpr std::size_t kBruteForceMaxN = 24;
inline constexpr std::uint64_t kBruteForceMaxSubsets = 10'000'000;

// Number of subsets of size <= k of an n-set, saturating at UINT64_MAX.
std::uint64_t CountSubsetsUpTo(std::size_t n, std::size_t k);

struct OptResult {
  Subset set;
  double value;
};

// Exact maximizer of f over |S| <= k. Ties go to the lexicographically
// smallest sorted id tuple. Throws CapacityError beyond the guards.
OptResult BruteForceOpt(Valuation& oracle, std::size_t k);
RunResult RunBruteForceOpt(Valuation& oracle, std::size_t k);

}  // namespace streamweak

#endif  // STREAMWEAK_BASELINES_H_
