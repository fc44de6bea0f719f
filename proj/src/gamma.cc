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

#include "streamweak/gamma.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <string>
#include <vector>

#include "streamweak/baselines.h"
#include "streamweak/error.h"
#include "streamweak/rng.h"

namespace streamweak {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// Calls fn on every size-`size` combination of `pool`, in lexicographic
// order of positions.
void ForEachCombination(const std::vector<ElementId>& pool, std::size_t size,
                        const std::function<void(const std::vector<ElementId>&)>& fn) {
  if (size > pool.size()) return;
  std::vector<std::size_t> pos(size);
  for (std::size_t i = 0; i < size; ++i) pos[i] = i;
  std::vector<ElementId> combo(size);
  while (true) {
    for (std::size_t i = 0; i < size; ++i) combo[i] = pool[pos[i]];
    fn(combo);
    std::size_t i = size;
    while (i > 0 && pos[i - 1] == pool.size() - size + i - 1) --i;
    if (i == 0) return;
    ++pos[i - 1];
    for (std::size_t j = i; j < size; ++j) pos[j] = pos[j - 1] + 1;
  }
}

struct RatioTerms {
  double numerator;
  double denominator;
};

double ResolveRatio(RatioTerms terms, bool* clamped) {
  if (terms.numerator == 0.0 && terms.denominator == 0.0) return 1.0;
  double denominator = terms.denominator;
  if (denominator <= 0.0) {
    if (clamped) *clamped = true;
    denominator = kGammaDenominatorFloor;
  }
  return terms.numerator / denominator;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t l_index = kSaturated;
  std::vector<ElementId> l;
  std::vector<ElementId> t;
  bool clamped = false;
  std::uint64_t pairs = 0;
};

// Scans every T for a fixed L, updating `best` with strict improvements.
void ScanLeft(Valuation& oracle, std::size_t n, std::size_t r,
              const std::vector<ElementId>& l, std::uint64_t l_index,
              Candidate& best) {
  const double f_l = Evaluate(oracle, l);
  std::vector<ElementId> pool;
  std::vector<double> single_gain(n, 0.0);
  std::vector<ElementId> members = l;
  for (std::uint32_t j = 0; j < n; ++j) {
    if (std::binary_search(l.begin(), l.end(), ElementId(j))) continue;
    pool.push_back(ElementId(j));
    members.push_back(ElementId(j));
    single_gain[j] = Evaluate(oracle, members) - f_l;
    members.pop_back();
  }
  const std::size_t max_t = std::min(r, pool.size());
  for (std::size_t t = 1; t <= max_t; ++t) {
    ForEachCombination(pool, t, [&](const std::vector<ElementId>& combo) {
      RatioTerms terms{0.0, 0.0};
      for (const ElementId j : combo) terms.numerator += single_gain[j.value];
      if (t == 1) {
        terms.denominator = single_gain[combo[0].value];
      } else {
        members.resize(l.size());
        members.insert(members.end(), combo.begin(), combo.end());
        terms.denominator = Evaluate(oracle, members) - f_l;
      }
      bool clamped = false;
      const double ratio = ResolveRatio(terms, &clamped);
      best.clamped = best.clamped || clamped;
      ++best.pairs;
      if (ratio < best.value) {
        best.value = ratio;
        best.l_index = l_index;
        best.l = l;
        best.t = combo;
      }
    });
  }
}

GammaEstimate ToEstimate(const Candidate& best, std::size_t n, std::size_t r,
                         bool exact) {
  GammaEstimate out;
  out.r = r;
  out.exact = exact;
  out.denominator_clamped = best.clamped;
  out.pairs = best.pairs;
  out.witness_l = Subset(n, best.l);
  out.witness_s = Subset(n, best.l);
  for (const ElementId j : best.t) out.witness_s.Insert(j);
  // No pair at all (r = 0 or n = 0): the minimum over an empty family is
  // taken as the 0/0 convention.
  out.value = std::isinf(best.value) ? 1.0 : best.value;
  return out;
}

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t Binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t below = CountSubsetsUpTo(n, k);
  if (k == 0) return below;
  const std::uint64_t prev = CountSubsetsUpTo(n, k - 1);
  if (below == kSaturated) return kSaturated;
  return below - prev;
}

double LogBinomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1) -
         std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

double LogSumExp(const std::vector<double>& logs) {
  double top = -std::numeric_limits<double>::infinity();
  for (const double x : logs) top = std::max(top, x);
  if (std::isinf(top)) return top;
  double total = 0.0;
  for (const double x : logs) total += std::exp(x - top);
  return top + std::log(total);
}

// Index drawn proportionally to exp(logs[i]).
std::size_t DrawLogWeighted(const std::vector<double>& logs, Xoshiro256& rng) {
  const double norm = LogSumExp(logs);
  double u = rng.Uniform();
  for (std::size_t i = 0; i < logs.size(); ++i) {
    u -= std::exp(logs[i] - norm);
    if (u < 0.0) return i;
  }
  // Rounding left a sliver; fall back to the last index with weight.
  for (std::size_t i = logs.size(); i > 0; --i) {
    if (!std::isinf(logs[i - 1])) return i - 1;
  }
  return 0;
}

}  // namespace

std::uint64_t CountGammaPairs(std::size_t n, std::size_t r) {
  std::uint64_t total = 0;
  for (std::size_t l = 0; l <= std::min(r, n); ++l) {
    const std::uint64_t rights = CountSubsetsUpTo(n - l, r);
    if (rights == kSaturated) return kSaturated;
    const std::uint64_t pairs = SaturatingMul(Binomial(n, l), rights - 1);
    if (pairs == kSaturated || total > kSaturated - pairs) return kSaturated;
    total += pairs;
  }
  return total;
}

double GammaRatio(Valuation& oracle, const Subset& l, const Subset& s,
                  bool* clamped) {
  const double f_l = Evaluate(oracle, l);
  Subset joint = l;
  RatioTerms terms{0.0, 0.0};
  for (const ElementId j : s.members()) {
    if (l.Contains(j)) continue;
    terms.numerator += Evaluate(oracle, l.With(j)) - f_l;
    joint.Insert(j);
  }
  terms.denominator = Evaluate(oracle, joint) - f_l;
  return ResolveRatio(terms, clamped);
}

GammaEstimate GammaExact(Valuation& oracle, std::size_t r, unsigned threads) {
  const std::size_t n = oracle.size();
  const std::uint64_t pairs = CountGammaPairs(n, r);
  if (pairs > kGammaMaxPairs) {
    throw CapacityError("exact gamma would enumerate " +
                        (pairs == kSaturated ? std::string("more than 2^64")
                                             : std::to_string(pairs)) +
                        " (L, S) pairs (limit " +
                        std::to_string(kGammaMaxPairs) +
                        "); use the sampled estimate instead");
  }
  std::vector<ElementId> all;
  for (std::uint32_t j = 0; j < n; ++j) all.push_back(ElementId(j));

  const unsigned workers = oracle.concurrent_safe() ? std::max(1u, threads) : 1u;
  auto scan_share = [&](unsigned share) {
    Candidate best;
    std::uint64_t l_index = 0;
    for (std::size_t size = 0; size <= std::min(r, n); ++size) {
      ForEachCombination(all, size, [&](const std::vector<ElementId>& l) {
        if (l_index % workers == share) ScanLeft(oracle, n, r, l, l_index, best);
        ++l_index;
      });
    }
    return best;
  };

  std::vector<Candidate> partial;
  if (workers == 1) {
    partial.push_back(scan_share(0));
  } else {
    std::vector<std::future<Candidate>> pending;
    for (unsigned w = 0; w < workers; ++w) {
      pending.push_back(std::async(std::launch::async, scan_share, w));
    }
    for (auto& f : pending) partial.push_back(f.get());
  }
  // Deterministic reduction: smallest value, then earliest L.
  Candidate best = partial.front();
  std::uint64_t total_pairs = 0;
  bool clamped = false;
  for (const Candidate& c : partial) {
    total_pairs += c.pairs;
    clamped = clamped || c.clamped;
    if (c.value < best.value ||
        (c.value == best.value && c.l_index < best.l_index)) {
      best = c;
    }
  }
  best.pairs = total_pairs;
  best.clamped = clamped;
  return ToEstimate(best, n, r, /*exact=*/true);
}

GammaEstimate GammaSampled(Valuation& oracle, std::size_t r,
                           std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw ParameterError("sampled gamma needs trials >= 1");
  const std::size_t n = oracle.size();
  Candidate best;
  if (r == 0 || n == 0) return ToEstimate(best, n, r, /*exact=*/false);

  // log #pairs for each |L| = l, and the |T| distribution given l.
  std::vector<double> log_left;
  std::vector<std::vector<double>> log_right;
  for (std::size_t l = 0; l <= std::min(r, n); ++l) {
    std::vector<double> t_logs;
    t_logs.push_back(-std::numeric_limits<double>::infinity());  // t = 0
    for (std::size_t t = 1; t <= std::min(r, n - l); ++t) {
      t_logs.push_back(LogBinomial(n - l, t));
    }
    log_left.push_back(LogBinomial(n, l) + LogSumExp(t_logs));
    log_right.push_back(std::move(t_logs));
  }

  Xoshiro256 rng(seed);
  std::vector<ElementId> ids;
  for (std::uint32_t j = 0; j < n; ++j) ids.push_back(ElementId(j));
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t l_size = DrawLogWeighted(log_left, rng);
    const std::size_t t_size = DrawLogWeighted(log_right[l_size], rng);
    // Partial Fisher-Yates: the first l_size + t_size positions are a
    // uniform random ordered sample.
    for (std::size_t i = 0; i < l_size + t_size; ++i) {
      std::swap(ids[i], ids[i + rng.Below(n - i)]);
    }
    std::vector<ElementId> l(ids.begin(), ids.begin() + l_size);
    std::vector<ElementId> t(ids.begin() + l_size,
                             ids.begin() + l_size + t_size);
    std::sort(l.begin(), l.end());
    std::sort(t.begin(), t.end());
    Subset left(n, l);
    Subset joint(n, l);
    for (const ElementId j : t) joint.Insert(j);
    bool clamped = false;
    const double ratio = GammaRatio(oracle, left, joint, &clamped);
    best.clamped = best.clamped || clamped;
    ++best.pairs;
    if (ratio < best.value) {
      best.value = ratio;
      best.l = std::move(l);
      best.t = std::move(t);
    }
  }
  return ToEstimate(best, n, r, /*exact=*/false);
}

}  // namespace streamweak
