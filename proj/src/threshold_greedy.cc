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

#include "streamweak/threshold_greedy.h"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <string>

#include "streamweak/error.h"

namespace streamweak {
namespace {

void CheckParams(std::size_t k, double tau) {
  if (k == 0) throw ParameterError("threshold greedy needs k >= 1");
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ParameterError("threshold greedy needs a finite tau >= 0, got " +
                         std::to_string(tau));
  }
}

}  // namespace

void CheckStream(std::span<const ElementId> stream, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (const ElementId u : stream) {
    if (u.value >= n) {
      throw StreamError("stream element " + std::to_string(u.value) +
                        " outside ground set of size " + std::to_string(n));
    }
    if (seen[u.value]) {
      throw StreamError("stream repeats element " + std::to_string(u.value));
    }
    seen[u.value] = true;
  }
}

ThresholdGreedy::ThresholdGreedy(Valuation& oracle, std::size_t k, double tau,
                                 ThresholdGreedyOptions options)
    : oracle_(&oracle),
      k_(k),
      tau_(tau),
      options_(options),
      set_(oracle.size()),
      value_(0.0) {
  CheckParams(k, tau);
  value_ = Evaluate(oracle, set_);
}

ThresholdGreedy::ThresholdGreedy(Valuation& oracle, std::size_t k, double tau,
                                 double empty_value,
                                 ThresholdGreedyOptions options)
    : oracle_(&oracle),
      k_(k),
      tau_(tau),
      options_(options),
      set_(oracle.size()),
      value_(empty_value) {
  CheckParams(k, tau);
}

bool ThresholdGreedy::InvariantHolds() const {
  const double required =
      tau_ * static_cast<double>(set_.size()) / static_cast<double>(k_);
  const double slack =
      kThresholdInvariantSlack * std::max(std::abs(required), std::abs(value_));
  return value_ >= required - slack;
}

bool ThresholdGreedy::Offer(ElementId u) {
  if (full()) return false;
  const double with_u = Evaluate(*oracle_, set_.With(u));
  const double gain = with_u - value_;
  if (!(gain >= tau_ / static_cast<double>(k_))) return false;

  set_.Insert(u);
  value_ += gain;
  if (options_.paranoid) {
    const double fresh = Evaluate(*oracle_, set_);
    if (std::abs(fresh - value_) >
        1e-9 * std::max({1.0, std::abs(fresh), std::abs(value_)})) {
      throw OracleError("incremental value " + std::to_string(value_) +
                        " disagrees with re-evaluation " +
                        std::to_string(fresh));
    }
  }
  if (!InvariantHolds()) ++violations_;
  assert(InvariantHolds());
  return true;
}

RunResult RunThresholdGreedy(Valuation& oracle, std::size_t k, double tau,
                             std::span<const ElementId> stream,
                             ThresholdGreedyOptions options) {
  const auto start = std::chrono::steady_clock::now();
  CheckStream(stream, oracle.size());
  CountingOracle counted(oracle);
  const std::uint64_t warnings_before = oracle.stats().warnings;

  ThresholdGreedy instance(counted, k, tau, options);
  std::size_t stored_peak = 0;
  for (const ElementId u : stream) {
    instance.Offer(u);
    stored_peak = std::max(stored_peak, instance.set().size());
  }

  RunResult result;
  result.set = instance.set();
  result.value = instance.value();
  result.oracle_calls = counted.calls();
  result.stored_peak = stored_peak;
  result.instances_peak = 1;
  result.invariant_violations = instance.invariant_violations();
  result.warnings = oracle.stats().warnings - warnings_before;
  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

}  // namespace streamweak
