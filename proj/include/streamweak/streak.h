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

#ifndef STREAMWEAK_STREAK_H_
#define STREAMWEAK_STREAK_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "streamweak/oracle.h"
#include "streamweak/result.h"
#include "streamweak/threshold_greedy.h"
#include "streamweak/types.h"

namespace streamweak {

// (1 - epsilon)^i, computed as exp(i * log1p(-epsilon)).
double LatticeValue(std::int64_t i, double epsilon);

// All integers i with (1 - eps) m / (9 k^2) <= (1 - eps)^i <= m k, ascending.
// Empty when m == 0.
std::vector<std::int64_t> LatticeExponents(double m, std::size_t k,
                                           double epsilon);

// Upper bound on the number of live instances while m > 0:
// 2 + ln(9 k^3) / epsilon.
double InstanceCountBound(std::size_t k, double epsilon);

// a(gamma) = (sqrt(2 - e^{-gamma/2}) - 1) / 2.
double AOfGamma(double gamma);

// Expected-value ratio of STREAK against OPT:
// (1 - eps) gamma (3 - e^{-gamma/2} - 2 sqrt(2 - e^{-gamma/2})) / 2.
double ApproximationBound(double gamma, double epsilon);

// Expected value guaranteed by a single threshold instance with the given
// tau: tau (sqrt(2 - e^{-gamma/2}) - 1).
double ThresholdGuarantee(double tau, double gamma);

struct RatioParams {
  double gamma;
  double a;

  static RatioParams ForGamma(double gamma);
  double Ratio(double epsilon) const;
};

struct StreakOptions {
  // Memoize evaluations so singleton queries are shared with marginal
  // queries. Off by default so call counts reflect real evaluations.
  std::size_t cache_capacity = 0;
  // Fan out offers across instances when the oracle is concurrent-safe.
  unsigned threads = 1;
  ThresholdGreedyOptions threshold;
};

// Streaming state: best singleton value m, its element, and one threshold
// instance per lattice exponent.
class Streak {
 public:
  // Evaluates f(empty) once.
  Streak(Valuation& oracle, std::size_t k, double epsilon,
         StreakOptions options = {});

  Streak(const Streak&) = delete;
  Streak& operator=(const Streak&) = delete;

  void Observe(ElementId u);

  // Best candidate among the instance outputs (ascending exponent), {u_m},
  // and the empty set; earlier candidates win ties.
  std::pair<Subset, double> Best() const;

  std::size_t k() const { return k_; }
  double epsilon() const { return epsilon_; }
  double m() const { return m_; }
  std::optional<ElementId> u_m() const { return u_m_; }
  double empty_value() const { return empty_value_; }
  const std::map<std::int64_t, ThresholdGreedy>& instances() const {
    return instances_;
  }

  std::size_t stored() const;
  std::size_t stored_peak() const { return stored_peak_; }
  std::size_t instances_peak() const { return instances_peak_; }
  // Violations over every instance ever created, including dropped ones.
  std::uint64_t invariant_violations() const;

 private:
  void Reconcile();
  void OfferAll(ElementId u);

  Valuation* oracle_;
  std::unique_ptr<CachingOracle> cache_;
  std::size_t k_;
  double epsilon_;
  StreakOptions options_;
  double empty_value_;
  double m_ = 0.0;
  std::optional<ElementId> u_m_;
  std::map<std::int64_t, ThresholdGreedy> instances_;
  std::size_t stored_peak_ = 0;
  std::size_t instances_peak_ = 0;
  std::uint64_t dropped_violations_ = 0;
};

RunResult RunStreak(Valuation& oracle, std::size_t k, double epsilon,
                    std::span<const ElementId> stream,
                    StreakOptions options = {});

}  // namespace streamweak

#endif  // STREAMWEAK_STREAK_H_
