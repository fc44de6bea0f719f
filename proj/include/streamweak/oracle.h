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

#ifndef STREAMWEAK_ORACLE_H_
#define STREAMWEAK_ORACLE_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <list>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "streamweak/types.h"

namespace streamweak {

struct OracleStats {
  std::uint64_t calls = 0;       // underlying evaluations
  std::uint64_t cache_hits = 0;  // queries served from a memo
  std::uint64_t warnings = 0;    // e.g. non-converged model fits
};

// A set function f: 2^N -> R>=0 accessed by value queries only.
//
// Value() receives distinct in-range ids in arbitrary order and must not
// depend on that order. Monotonicity is assumed by the algorithms but never
// enforced; a negative marginal is simply never accepted.
class Valuation {
 public:
  virtual ~Valuation() = default;

  virtual std::size_t size() const = 0;
  virtual double Value(std::span<const ElementId> members) = 0;

  // Whether Value() may be called from several threads at once.
  virtual bool concurrent_safe() const { return true; }
  virtual OracleStats stats() const { return {}; }
  virtual std::string name() const = 0;
};

// Checked evaluation: throws OracleViolation if f(s) is NaN, infinite or
// negative.
double Evaluate(Valuation& oracle, const Subset& s);
double Evaluate(Valuation& oracle, std::span<const ElementId> members);

// f(base + u) - f(base). With `base_value` supplied this costs one oracle
// call, otherwise two. Throws PreconditionError if u is already in base.
double Marginal(Valuation& oracle, const Subset& base, ElementId u,
                std::optional<double> base_value = std::nullopt);

// Counts every evaluation that reaches the wrapped oracle.
class CountingOracle final : public Valuation {
 public:
  explicit CountingOracle(Valuation& inner) : inner_(inner) {}

  std::size_t size() const override { return inner_.size(); }
  double Value(std::span<const ElementId> members) override;
  bool concurrent_safe() const override { return inner_.concurrent_safe(); }
  OracleStats stats() const override;
  std::string name() const override { return inner_.name(); }

  std::uint64_t calls() const { return calls_.load(); }

 private:
  Valuation& inner_;
  std::atomic<std::uint64_t> calls_{0};
};

// Memoizes values by the sorted member list, evicting least recently used
// entries beyond `capacity`. Capacity 0 disables the memo entirely.
class CachingOracle final : public Valuation {
 public:
  CachingOracle(Valuation& inner, std::size_t capacity)
      : inner_(inner), capacity_(capacity) {}

  std::size_t size() const override { return inner_.size(); }
  double Value(std::span<const ElementId> members) override;
  bool concurrent_safe() const override { return inner_.concurrent_safe(); }
  OracleStats stats() const override;
  std::string name() const override { return inner_.name(); }

  std::uint64_t cache_hits() const { return hits_.load(); }
  std::size_t entries() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const;
  };
  using Lru = std::list<std::vector<std::uint32_t>>;
  struct Entry {
    double value;
    Lru::iterator position;
  };

  Valuation& inner_;
  std::size_t capacity_;
  std::atomic<std::uint64_t> hits_{0};
  mutable std::mutex mu_;
  Lru lru_;
  std::unordered_map<std::vector<std::uint32_t>, Entry, KeyHash> memo_;
};

}  // namespace streamweak

#endif  // STREAMWEAK_ORACLE_H_
