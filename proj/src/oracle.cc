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

#include "streamweak/oracle.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "streamweak/error.h"

namespace streamweak {
namespace {

std::string DescribeSubset(const std::vector<std::uint32_t>& ids) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out << ',';
    out << ids[i];
  }
  out << '}';
  return out.str();
}

}  // namespace

double Evaluate(Valuation& oracle, std::span<const ElementId> members) {
  const double value = oracle.Value(members);
  if (!std::isfinite(value) || value < 0.0) {
    std::vector<std::uint32_t> ids = ToRawIds(members);
    std::sort(ids.begin(), ids.end());
    std::ostringstream what;
    what << "oracle '" << oracle.name() << "' returned " << value
         << " for subset " << DescribeSubset(ids);
    throw OracleViolation(what.str(), std::move(ids), value);
  }
  return value;
}

double Evaluate(Valuation& oracle, const Subset& s) {
  return Evaluate(oracle, s.members());
}

double Marginal(Valuation& oracle, const Subset& base, ElementId u,
                std::optional<double> base_value) {
  if (base.Contains(u)) {
    throw PreconditionError("marginal of element " + std::to_string(u.value) +
                            " already in the base set");
  }
  const double before = base_value ? *base_value : Evaluate(oracle, base);
  return Evaluate(oracle, base.With(u)) - before;
}

double CountingOracle::Value(std::span<const ElementId> members) {
  calls_.fetch_add(1, std::memory_order_relaxed);
  return inner_.Value(members);
}

OracleStats CountingOracle::stats() const {
  OracleStats s = inner_.stats();
  s.calls = calls_.load();
  return s;
}

std::size_t CachingOracle::KeyHash::operator()(
    const std::vector<std::uint32_t>& key) const {
  // FNV-1a over the id words.
  std::uint64_t h = 1469598103934665603ull;
  for (const std::uint32_t id : key) {
    h ^= id;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

double CachingOracle::Value(std::span<const ElementId> members) {
  if (capacity_ == 0) return inner_.Value(members);
  std::vector<std::uint32_t> key = ToRawIds(members);
  std::sort(key.begin(), key.end());
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.position);
      hits_.fetch_add(1, std::memory_order_relaxed);
      return it->second.value;
    }
  }
  const double value = inner_.Value(members);
  std::lock_guard<std::mutex> lock(mu_);
  if (memo_.contains(key)) return value;  // raced with another thread
  lru_.push_front(key);
  memo_.emplace(std::move(key), Entry{value, lru_.begin()});
  if (memo_.size() > capacity_) {
    memo_.erase(lru_.back());
    lru_.pop_back();
  }
  return value;
}

OracleStats CachingOracle::stats() const {
  OracleStats s = inner_.stats();
  s.cache_hits += hits_.load();
  return s;
}

std::size_t CachingOracle::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

}  // namespace streamweak
