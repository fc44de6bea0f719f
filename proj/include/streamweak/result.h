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

#ifndef STREAMWEAK_RESULT_H_
#define STREAMWEAK_RESULT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "streamweak/types.h"

namespace streamweak {

// Outcome and cost metrics of one algorithm run.
struct RunResult {
  Subset set{1};
  double value = 0.0;
  std::uint64_t oracle_calls = 0;
  std::size_t stored_peak = 0;     // elements held at any one time
  std::size_t instances_peak = 0;  // live threshold instances (STREAK only)
  double wall_ms = 0.0;
  // Steps at which a threshold instance had f(S) < tau * |S| / k.
  std::uint64_t invariant_violations = 0;
  // Oracle-side warnings raised during the run (non-converged fits).
  std::uint64_t warnings = 0;
  // Final best singleton value m (STREAK only).
  std::optional<double> max_singleton;
};

// Throws StreamError if the stream repeats an id or leaves [0, n).
void CheckStream(std::span<const ElementId> stream, std::size_t n);

}  // namespace streamweak

#endif  // STREAMWEAK_RESULT_H_
