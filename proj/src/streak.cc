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

#include "streamweak/streak.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <string>

#include "streamweak/error.h"

namespace streamweak {
namespace {

constexpr std::int64_t kMaxLatticeSize = 10'000'000;

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ParameterError("epsilon must lie in (0, 1), got " +
                         std::to_string(epsilon));
  }
}

void CheckGamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ParameterError("gamma must lie in (0, 1], got " +
                         std::to_string(gamma));
  }
}

}  // namespace

double LatticeValue(std::int64_t i, double epsilon) {
  return std::exp(static_cast<double>(i) * std::log1p(-epsilon));
}

std::vector<std::int64_t> LatticeExponents(double m, std::size_t k,
                                           double epsilon) {
  CheckEpsilon(epsilon);
  if (k == 0) throw ParameterError("k must be at least 1");
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw ParameterError("m must be finite and nonnegative, got " +
                         std::to_string(m));
  }
  if (m == 0.0) return {};

  const double kd = static_cast<double>(k);
  const double hi = m * kd;
  const double lo = (1.0 - epsilon) * m / (9.0 * kd * kd);
  const double log_base = std::log1p(-epsilon);
  auto below_hi = [&](std::int64_t i) { return LatticeValue(i, epsilon) <= hi; };
  auto above_lo = [&](std::int64_t i) { return LatticeValue(i, epsilon) >= lo; };

  // The closed-form endpoints can be off by one in floating point; walk them
  // until the defining inequalities hold exactly.
  auto first = static_cast<std::int64_t>(std::ceil(std::log(hi) / log_base));
  while (!below_hi(first)) ++first;
  while (below_hi(first - 1)) --first;
  auto last = static_cast<std::int64_t>(std::floor(std::log(lo) / log_base));
  while (!above_lo(last)) --last;
  while (above_lo(last + 1)) ++last;

  if (last - first + 1 > kMaxLatticeSize) {
    throw ParameterError("threshold lattice too dense for epsilon " +
                         std::to_string(epsilon));
  }
  std::vector<std::int64_t> out;
  for (std::int64_t i = first; i <= last; ++i) out.push_back(i);
  return out;
}

double InstanceCountBound(std::size_t k, double epsilon) {
  CheckEpsilon(epsilon);
  const double kd = static_cast<double>(k);
  return 2.0 + std::log(9.0 * kd * kd * kd) / epsilon;
}

double AOfGamma(double gamma) {
  CheckGamma(gamma);
  // sqrt(2 - e) - 1 == (1 - e) / (sqrt(2 - e) + 1), with 1 - e from expm1
  // so that small gamma keeps its precision.
  const double one_minus_e = -std::expm1(-gamma / 2.0);
  const double root = std::sqrt(1.0 + one_minus_e);
  return one_minus_e / (root + 1.0) / 2.0;
}

double ApproximationBound(double gamma, double epsilon) {
  CheckGamma(gamma);
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ParameterError("epsilon must lie in [0, 1), got " +
                         std::to_string(epsilon));
  }
  // 3 - e - 2 sqrt(2 - e) == (sqrt(2 - e) - 1)^2 == (2a)^2.
  const double a = AOfGamma(gamma);
  return 2.0 * (1.0 - epsilon) * gamma * a * a;
}

double ThresholdGuarantee(double tau, double gamma) {
  return tau * 2.0 * AOfGamma(gamma);
}

RatioParams RatioParams::ForGamma(double gamma) {
  return RatioParams{gamma, AOfGamma(gamma)};
}

double RatioParams::Ratio(double epsilon) const {
  return ApproximationBound(gamma, epsilon);
}

Streak::Streak(Valuation& oracle, std::size_t k, double epsilon,
               StreakOptions options)
    : oracle_(&oracle), k_(k), epsilon_(epsilon), options_(options) {
  CheckEpsilon(epsilon);
  if (k == 0) throw ParameterError("STREAK needs k >= 1");
  if (options_.cache_capacity > 0) {
    cache_ = std::make_unique<CachingOracle>(oracle, options_.cache_capacity);
    oracle_ = cache_.get();
  }
  empty_value_ = Evaluate(*oracle_, std::span<const ElementId>{});
}

void Streak::Observe(ElementId u) {
  const ElementId single[] = {u};
  const double singleton = Evaluate(*oracle_, single);
  // Ties replace u_m. A zero singleton is never kept: with m = 0 the {u_m}
  // candidate cannot beat f(empty) and nothing needs storing.
  if (singleton >= m_ && singleton > 0.0) {
    m_ = singleton;
    u_m_ = u;
  }
  Reconcile();
  OfferAll(u);
  stored_peak_ = std::max(stored_peak_, stored());
  instances_peak_ = std::max(instances_peak_, instances_.size());
}

void Streak::Reconcile() {
  const std::vector<std::int64_t> wanted = LatticeExponents(m_, k_, epsilon_);
  // m never decreases, so departures are exponents outside the new range.
  for (auto it = instances_.begin(); it != instances_.end();) {
    if (!std::binary_search(wanted.begin(), wanted.end(), it->first)) {
      dropped_violations_ += it->second.invariant_violations();
      it = instances_.erase(it);
    } else {
      ++it;
    }
  }
  for (const std::int64_t i : wanted) {
    if (!instances_.contains(i)) {
      instances_.emplace(
          i, ThresholdGreedy(*oracle_, k_, LatticeValue(i, epsilon_),
                             empty_value_, options_.threshold));
    }
  }
}

void Streak::OfferAll(ElementId u) {
  std::vector<ThresholdGreedy*> open;
  for (auto& [i, instance] : instances_) {
    if (!instance.full()) open.push_back(&instance);
  }
  const unsigned threads = options_.threads;
  if (threads <= 1 || open.size() < 2 || !oracle_->concurrent_safe()) {
    for (ThresholdGreedy* instance : open) instance->Offer(u);
    return;
  }
  // Instance states are disjoint, so the outcome matches the sequential
  // loop exactly.
  const std::size_t chunks = std::min<std::size_t>(threads, open.size());
  std::vector<std::future<void>> pending;
  for (std::size_t c = 0; c < chunks; ++c) {
    pending.push_back(std::async(std::launch::async, [&, c] {
      for (std::size_t j = c; j < open.size(); j += chunks) open[j]->Offer(u);
    }));
  }
  for (auto& f : pending) f.get();
}

std::pair<Subset, double> Streak::Best() const {
  Subset best(oracle_->size());
  double best_value = -1.0;
  for (const auto& [i, instance] : instances_) {
    if (instance.value() > best_value) {
      best = instance.set();
      best_value = instance.value();
    }
  }
  if (u_m_ && m_ > best_value) {
    best = Subset(oracle_->size());
    best.Insert(*u_m_);
    best_value = m_;
  }
  if (empty_value_ > best_value) {
    best = Subset(oracle_->size());
    best_value = empty_value_;
  }
  return {std::move(best), best_value};
}

std::size_t Streak::stored() const {
  std::size_t total = u_m_ ? 1 : 0;
  for (const auto& [i, instance] : instances_) total += instance.set().size();
  return total;
}

std::uint64_t Streak::invariant_violations() const {
  std::uint64_t total = dropped_violations_;
  for (const auto& [i, instance] : instances_) {
    total += instance.invariant_violations();
  }
  return total;
}

RunResult RunStreak(Valuation& oracle, std::size_t k, double epsilon,
                    std::span<const ElementId> stream, StreakOptions options) {
  const auto start = std::chrono::steady_clock::now();
  CheckEpsilon(epsilon);
  if (k == 0) throw ParameterError("STREAK needs k >= 1");
  CheckStream(stream, oracle.size());
  CountingOracle counted(oracle);
  const std::uint64_t warnings_before = oracle.stats().warnings;

  Streak streak(counted, k, epsilon, options);
  for (const ElementId u : stream) streak.Observe(u);
  auto [set, value] = streak.Best();

  RunResult result;
  result.set = std::move(set);
  result.value = value;
  result.oracle_calls = counted.calls();
  result.stored_peak = streak.stored_peak();
  result.instances_peak = streak.instances_peak();
  result.invariant_violations = streak.invariant_violations();
  result.warnings = oracle.stats().warnings - warnings_before;
  result.max_singleton = streak.m();
  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

}  // namespace streamweak
