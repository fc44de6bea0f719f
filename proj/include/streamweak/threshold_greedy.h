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

#ifndef STREAMWEAK_THRESHOLD_GREEDY_H_
#define STREAMWEAK_THRESHOLD_GREEDY_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "streamweak/oracle.h"
#include "streamweak/result.h"
#include "streamweak/types.h"

namespace streamweak {

struct ThresholdGreedyOptions {
  // Re-evaluate f(S) after every accept and compare with the incrementally
  // maintained value (1e-9 relative). Costs one extra call per accept.
  bool paranoid = false;
};

// Relative slack used when checking f(S) >= tau * |S| / k.
inline constexpr double kThresholdInvariantSlack = 1e-9;

// One-pass threshold rule: accept u iff |S| < k and f(u | S) >= tau / k.
class ThresholdGreedy {
 public:
  // Evaluates f(empty) once.
  ThresholdGreedy(Valuation& oracle, std::size_t k, double tau,
                  ThresholdGreedyOptions options = {});
  // Uses a caller-supplied f(empty) and makes no oracle call.
  ThresholdGreedy(Valuation& oracle, std::size_t k, double tau,
                  double empty_value, ThresholdGreedyOptions options = {});

  // Offers the next stream element. One oracle call while the buffer has
  // room, none once it is full.
  bool Offer(ElementId u);

  const Subset& set() const { return set_; }
  double value() const { return value_; }
  double tau() const { return tau_; }
  std::size_t k() const { return k_; }
  bool full() const { return set_.size() >= k_; }

  // Whether f(S) >= tau * |S| / k currently holds (with relative slack).
  bool InvariantHolds() const;
  std::uint64_t invariant_violations() const { return violations_; }

 private:
  Valuation* oracle_;
  std::size_t k_;
  double tau_;
  ThresholdGreedyOptions options_;
  Subset set_;
  double value_;
  std::uint64_t violations_ = 0;
};

// Runs a single threshold instance over the whole stream.
RunResult RunThresholdGreedy(Valuation& oracle, std::size_t k, double tau,
                             std::span<const ElementId> stream,
                             ThresholdGreedyOptions options = {});

}  // namespace streamweak

#endif  // STREAMWEAK_THRESHOLD_GREEDY_H_
