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

#ifndef STREAMWEAK_TESTS_TEST_UTIL_H_
#define STREAMWEAK_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "streamweak/objectives.h"
#include "streamweak/oracle.h"
#include "streamweak/rng.h"
#include "streamweak/types.h"

namespace streamweak::testing {

inline std::vector<ElementId> Ids(std::initializer_list<std::uint32_t> ids) {
  std::vector<ElementId> out;
  for (std::uint32_t id : ids) out.emplace_back(id);
  return out;
}

inline std::vector<ElementId> Iota(std::size_t n) {
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(static_cast<std::uint32_t>(i));
  return out;
}

inline std::vector<ElementId> Permuted(std::size_t n, std::uint64_t seed) {
  std::vector<ElementId> out = Iota(n);
  Xoshiro256 rng(seed);
  Shuffle(out, rng);
  return out;
}

// Valuation defined by a callback over sorted raw ids.
class FnOracle final : public Valuation {
 public:
  using Fn = std::function<double(const std::vector<std::uint32_t>&)>;
  FnOracle(std::size_t n, Fn fn) : n_(n), fn_(std::move(fn)) {}
  std::size_t size() const override { return n_; }
  double Value(std::span<const ElementId> members) override {
    std::vector<std::uint32_t> ids = ToRawIds(members);
    std::sort(ids.begin(), ids.end());
    return fn_(ids);
  }
  std::string name() const override { return "fn"; }

 private:
  std::size_t n_;
  Fn fn_;
};

// Hard instance straight from its closed form, independently of the library.
inline double HardClosedForm(std::size_t k, const std::vector<std::uint32_t>& ids) {
  double u = 0;
  double v = 0;
  for (std::uint32_t id : ids) {
    if (id < k) {
      u += 1;
    } else if (id < 2 * k) {
      v += 1;
    }
  }
  return std::min(2 * u + 1, 2 * v);
}

inline std::vector<ElementId> FromMask(std::uint64_t mask) {
  std::vector<ElementId> out;
  for (std::uint32_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) out.emplace_back(i);
  }
  return out;
}

// max f(S) over |S| <= k by bitmask enumeration (n <= 20).
inline double MaskBruteOpt(Valuation& f, std::size_t k) {
  const std::size_t n = f.size();
  double best = f.Value({});
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > k) continue;
    const std::vector<ElementId> s = FromMask(mask);
    best = std::max(best, f.Value(s));
  }
  return best;
}

// Random weighted coverage instance.
inline CoverageObjective RandomCoverage(std::uint64_t seed, std::size_t n,
                                        std::size_t universe) {
  Xoshiro256 rng(seed);
  std::vector<double> weights(universe);
  for (double& w : weights) w = 1.0 + static_cast<double>(rng.Below(5));
  std::vector<std::vector<std::uint32_t>> sets(n);
  for (auto& set : sets) {
    const std::size_t size = 1 + rng.Below(std::max<std::size_t>(1, universe / 3));
    std::vector<std::uint32_t> items(universe);
    std::iota(items.begin(), items.end(), 0u);
    Shuffle(items, rng);
    set.assign(items.begin(), items.begin() + static_cast<long>(size));
    std::sort(set.begin(), set.end());
  }
  return CoverageObjective(std::move(sets), std::move(weights));
}

}  // namespace streamweak::testing

#endif  // STREAMWEAK_TESTS_TEST_UTIL_H_
