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

#include "streamweak/baselines.h"

#include <algorithm>
#include <chrono>
#include <future>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "streamweak/error.h"

namespace streamweak {
namespace {

using Clock = std::chrono::steady_clock;

double ElapsedMs(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Evaluates every candidate, optionally across threads. Results are written
// by index so the reduction order never depends on scheduling.
std::vector<double> EvaluateAll(Valuation& oracle,
                                const std::vector<Subset>& candidates,
                                unsigned threads) {
  std::vector<double> values(candidates.size());
  if (threads <= 1 || candidates.size() < 2 || !oracle.concurrent_safe()) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      values[i] = Evaluate(oracle, candidates[i]);
    }
    return values;
  }
  const std::size_t chunks = std::min<std::size_t>(threads, candidates.size());
  std::vector<std::future<void>> pending;
  for (std::size_t c = 0; c < chunks; ++c) {
    pending.push_back(std::async(std::launch::async, [&, c] {
      for (std::size_t i = c; i < candidates.size(); i += chunks) {
        values[i] = Evaluate(oracle, candidates[i]);
      }
    }));
  }
  for (auto& f : pending) f.get();
  return values;
}

RunResult Finish(Subset set, double value, const CountingOracle& counted,
                 std::uint64_t warnings_before, std::size_t stored_peak,
                 Clock::time_point start) {
  RunResult result;
  result.set = std::move(set);
  result.value = value;
  result.oracle_calls = counted.calls();
  result.stored_peak = std::max(stored_peak, result.set.size());
  const OracleStats stats = counted.stats();
  result.warnings = stats.warnings - warnings_before;
  result.wall_ms = ElapsedMs(start);
  return result;
}

}  // namespace

RunResult RunRandomSubset(Valuation& oracle, std::size_t k,
                          std::span<const ElementId> stream) {
  const auto start = Clock::now();
  CheckStream(stream, oracle.size());
  CountingOracle counted(oracle);
  const std::uint64_t warnings_before = oracle.stats().warnings;
  const std::size_t take = std::min(k, stream.size());
  Subset set(oracle.size(), stream.first(take));
  const double value = Evaluate(counted, set);
  return Finish(std::move(set), value, counted, warnings_before, take, start);
}

RunResult RunLocalSearch(Valuation& oracle, std::size_t k,
                         std::span<const ElementId> stream,
                         LocalSearchOptions options) {
  const auto start = Clock::now();
  CheckStream(stream, oracle.size());
  CountingOracle counted(oracle);
  const std::uint64_t warnings_before = oracle.stats().warnings;

  const std::size_t fill = std::min(k, stream.size());
  Subset set(oracle.size(), stream.first(fill));
  double value = Evaluate(counted, set);
  std::size_t stored_peak = fill;

  for (const ElementId u : stream.subspan(fill)) {
    std::vector<Subset> candidates;
    candidates.reserve(set.size());
    for (const ElementId out : set.members()) {
      Subset swapped = set;
      swapped.Erase(out);
      swapped.Insert(u);
      candidates.push_back(std::move(swapped));
    }
    stored_peak = std::max(stored_peak, set.size() + 1);
    const std::vector<double> values =
        EvaluateAll(counted, candidates, options.threads);
    std::size_t best = candidates.size();
    double best_gain = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double gain = values[j] - value;
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    if (best < candidates.size()) {
      set = std::move(candidates[best]);
      value = values[best];
    }
  }
  return Finish(std::move(set), value, counted, warnings_before, stored_peak,
                start);
}

RunResult RunFullGreedy(Valuation& oracle, std::size_t k,
                        GreedyOptions options) {
  const auto start = Clock::now();
  CountingOracle counted(oracle);
  const std::uint64_t warnings_before = oracle.stats().warnings;
  const std::size_t n = oracle.size();

  Subset set(n);
  double value = Evaluate(counted, set);
  const std::size_t rounds = std::min(k, n);

  if (!options.lazy) {
    for (std::size_t round = 0; round < rounds; ++round) {
      std::vector<ElementId> ids;
      std::vector<Subset> candidates;
      for (std::uint32_t j = 0; j < n; ++j) {
        const ElementId u(j);
        if (set.Contains(u)) continue;
        ids.push_back(u);
        candidates.push_back(set.With(u));
      }
      const std::vector<double> values =
          EvaluateAll(counted, candidates, options.threads);
      std::size_t best = 0;
      for (std::size_t j = 1; j < values.size(); ++j) {
        if (values[j] > values[best]) best = j;
      }
      if (values.empty() || !(values[best] - value > 0.0)) break;
      set.Insert(ids[best]);
      value = values[best];
    }
    const std::size_t size = set.size();
    return Finish(std::move(set), value, counted, warnings_before, size, start);
  }

  // Lazy variant: stale upper bounds on each element's gain, refreshed on
  // demand. Ordered by (gain desc, id asc).
  struct Bound {
    double gain;
    ElementId id;
    std::size_t round;
  };
  auto lower_priority = [](const Bound& a, const Bound& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.id > b.id;
  };
  std::priority_queue<Bound, std::vector<Bound>, decltype(lower_priority)>
      heap(lower_priority);
  for (std::uint32_t j = 0; j < n; ++j) {
    heap.push({std::numeric_limits<double>::infinity(), ElementId(j),
               std::numeric_limits<std::size_t>::max()});
  }
  for (std::size_t round = 0; round < rounds && !heap.empty();) {
    Bound top = heap.top();
    heap.pop();
    if (top.round == round) {
      if (!(top.gain > 0.0)) break;
      set.Insert(top.id);
      value += top.gain;
      ++round;
      continue;
    }
    top.gain = Evaluate(counted, set.With(top.id)) - value;
    top.round = round;
    heap.push(top);
  }
  const std::size_t size = set.size();
  return Finish(std::move(set), value, counted, warnings_before, size, start);
}

std::uint64_t CountSubsetsUpTo(std::size_t n, std::size_t k) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, j)
  for (std::size_t j = 0; j <= std::min(n, k); ++j) {
    if (total > kMax - binom) return kMax;
    total += binom;
    if (j == std::min(n, k)) break;
    // C(n, j+1) = C(n, j) (n - j) / (j + 1); exact because the product of
    // j+1 consecutive integers is divisible by (j+1)!.
    const std::uint64_t numer = n - j;
    if (binom > kMax / numer) return kMax;
    binom = binom * numer / (j + 1);
  }
  return total;
}

OptResult BruteForceOpt(Valuation& oracle, std::size_t k) {
  const std::size_t n = oracle.size();
  if (n > kBruteForceMaxN) {
    throw CapacityError("brute-force OPT limited to n <= " +
                        std::to_string(kBruteForceMaxN) + ", got n = " +
                        std::to_string(n));
  }
  const std::uint64_t count = CountSubsetsUpTo(n, k);
  if (count > kBruteForceMaxSubsets) {
    throw CapacityError("brute-force OPT would enumerate " +
                        std::to_string(count) + " subsets (limit " +
                        std::to_string(kBruteForceMaxSubsets) + ")");
  }

  std::vector<ElementId> best_ids;
  double best_value = Evaluate(oracle, std::span<const ElementId>{});
  std::vector<ElementId> combo;
  for (std::size_t size = 1; size <= std::min(n, k); ++size) {
    combo.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      combo[i] = ElementId(static_cast<std::uint32_t>(i));
    }
    while (true) {
      const double value = Evaluate(oracle, combo);
      if (value > best_value ||
          (value == best_value &&
           std::lexicographical_compare(combo.begin(), combo.end(),
                                        best_ids.begin(), best_ids.end()))) {
        best_value = value;
        best_ids = combo;
      }
      // Advance to the next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && combo[pos - 1].value == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++combo[pos - 1].value;
      for (std::size_t i = pos; i < size; ++i) {
        combo[i].value = combo[i - 1].value + 1;
      }
    }
  }
  return OptResult{Subset(n, best_ids), best_value};
}

RunResult RunBruteForceOpt(Valuation& oracle, std::size_t k) {
  const auto start = Clock::now();
  CountingOracle counted(oracle);
  const std::uint64_t warnings_before = oracle.stats().warnings;
  OptResult opt = BruteForceOpt(counted, k);
  const std::size_t size = opt.set.size();
  return Finish(std::move(opt.set), opt.value, counted, warnings_before, size,
                start);
}

}  // namespace streamweak
