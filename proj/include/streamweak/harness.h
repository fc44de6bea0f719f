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

#ifndef STREAMWEAK_HARNESS_H_
#define STREAMWEAK_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "streamweak/objectives.h"
#include "streamweak/oracle.h"
#include "streamweak/result.h"
#include "streamweak/types.h"

namespace streamweak {

enum class OrderKind { kRandom, kAdversarialFk, kFile };

struct StreamOrder {
  std::vector<ElementId> ids;
  OrderKind provenance = OrderKind::kRandom;
  std::uint64_t seed = 0;
  std::string path;
};

// Uniform permutation of [0, n) by Fisher-Yates over xoshiro256**.
StreamOrder RandomOrder(std::size_t n, std::uint64_t seed);

// All u-elements and dummies (shuffled together), then all v-elements
// (shuffled). Under this order STREAK sees only zero singletons until the
// first v arrives, so it never retains a u-element.
StreamOrder AdversarialOrderFk(const HardInstanceParams& params,
                               std::uint64_t seed);

// Whitespace-separated ids; must be a permutation of [0, n).
StreamOrder ReadOrderFile(const std::string& path, std::size_t n);

bool IsPermutation(std::span<const ElementId> ids, std::size_t n);

enum class AlgorithmKind {
  kStreak,
  kThresholdGreedy,
  kRandomSubset,
  kLocalSearch,
  kFullGreedy,
  kBruteForce,
};

// streak, tg, random, local, greedy, opt.
AlgorithmKind ParseAlgorithm(const std::string& name);
const char* AlgorithmName(AlgorithmKind kind);

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kStreak;
  double epsilon = 0.0;  // STREAK
  double tau = 0.0;      // threshold greedy
};

struct RunOptions {
  std::size_t cache_capacity = 0;
  unsigned threads = 1;
};

// Dispatches one algorithm over one stream.
RunResult RunAlgorithm(Valuation& oracle, const AlgorithmSpec& spec,
                       std::size_t k, std::span<const ElementId> stream,
                       RunOptions options = {});

struct ExperimentConfig {
  Valuation* objective = nullptr;
  std::string objective_name;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t k = 1;
  std::vector<std::uint64_t> seeds;
  std::size_t repetitions = 1;
  OrderKind order = OrderKind::kRandom;
  std::optional<HardInstanceParams> hard;  // for kAdversarialFk
  std::string order_path;                  // for kFile
  std::string output_path;                 // empty: no file
  unsigned jobs = 1;
  RunOptions run;

  // Throws ParameterError.
  void Validate() const;
};

struct ExperimentRow {
  std::string algorithm;
  std::string objective;
  std::size_t n = 0;
  std::size_t k = 0;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;  // seed the stream order was drawn from
  RunResult result;
};

struct AlgorithmSummary {
  std::string algorithm;
  std::optional<double> epsilon;
  std::size_t runs = 0;
  double mean_value = 0.0;
  double std_value = 0.0;
  double mean_calls = 0.0;
  double std_calls = 0.0;
  double mean_wall_ms = 0.0;
};

struct ExperimentTable {
  std::vector<ExperimentRow> rows;
  std::vector<AlgorithmSummary> summary;
};

// Seed of repetition `rep` of base seed `seed` (identity for rep 0).
std::uint64_t RepetitionSeed(std::uint64_t seed, std::size_t rep);

// For each algorithm, seed and repetition: draws the order, runs the
// algorithm through a fresh counting wrapper, and records one row. Rows are
// algorithm-major. Writes the CSV when output_path is set.
ExperimentTable RunExperiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader =
    "algorithm,objective,n,k,epsilon,seed,value,oracle_calls,stored_peak,"
    "instances_peak,wall_ms";

// Nine significant digits, as used in every CSV float cell.
std::string FormatFloat(double value);

void WriteCsv(std::ostream& out, std::span<const ExperimentRow> rows);
void WriteCsv(const std::string& path, std::span<const ExperimentRow> rows);

}  // namespace streamweak

#endif  // STREAMWEAK_HARNESS_H_
