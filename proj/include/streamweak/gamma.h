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

#ifndef STREAMWEAK_GAMMA_H_
#define STREAMWEAK_GAMMA_H_

#include <cstddef>
#include <cstdint>

#include "streamweak/oracle.h"
#include "streamweak/types.h"

namespace streamweak {

// Weak-submodularity ratio
//   gamma_r = min over L, S with |L| <= r, |S \ L| <= r of
//             sum_{j in S \ L} f(j | L) / f(S | L),
// with 0/0 taken as 1.
struct GammaEstimate {
  double value = 1.0;
  std::size_t r = 0;
  bool exact = false;
  // Minimizing pair; witness_s = L + (S \ L).
  Subset witness_l{1};
  Subset witness_s{1};
  // Set when some pair had a positive numerator over a nonpositive
  // denominator (a monotonicity violation). The denominator is clamped to
  // kGammaDenominatorFloor for that pair.
  bool denominator_clamped = false;
  std::uint64_t pairs = 0;
};

inline constexpr std::uint64_t kGammaMaxPairs = 10'000'000;
inline constexpr double kGammaDenominatorFloor = 1e-15;

// Number of (L, T) pairs with |L| <= r, 1 <= |T| <= r, L and T disjoint.
// Saturates at UINT64_MAX.
std::uint64_t CountGammaPairs(std::size_t n, std::size_t r);

// The ratio for one pair; `clamped` reports a floored denominator.
double GammaRatio(Valuation& oracle, const Subset& l, const Subset& s,
                  bool* clamped = nullptr);

// Exhaustive minimum. Enumerates L by size then lexicographically, and
// S \ L likewise; the first minimizer is the witness. Throws CapacityError
// past kGammaMaxPairs.
GammaEstimate GammaExact(Valuation& oracle, std::size_t r,
                         unsigned threads = 1);

// Minimum over `trials` pairs drawn uniformly from all valid (L, S \ L)
// pairs with S \ L nonempty. Never below the exact value.
GammaEstimate GammaSampled(Valuation& oracle, std::size_t r,
                           std::size_t trials, std::uint64_t seed);

}  // namespace streamweak

#endif  // STREAMWEAK_GAMMA_H_
