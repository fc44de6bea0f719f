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

#ifndef STREAMWEAK_DATASETS_H_
#define STREAMWEAK_DATASETS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "streamweak/objectives.h"

namespace streamweak {

// Feature columns and response as stored on disk: a CSV with a header row,
// the feature columns, then a final column named "y".
struct RegressionTable {
  std::vector<std::string> feature_names;
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
};

// {"universe_weights": [...], "sets": [[ids...], ...]}
struct CoverageSpec {
  std::vector<double> universe_weights;
  std::vector<std::vector<std::uint32_t>> sets;
};

RegressionTable ReadRegressionCsv(const std::string& path);
void WriteRegressionCsv(const std::string& path, const RegressionTable& table);

CoverageSpec ParseCoverageJson(const std::string& text);
CoverageSpec ReadCoverageJson(const std::string& path);
std::string CoverageToJson(const CoverageSpec& spec);
void WriteCoverageJson(const std::string& path, const CoverageSpec& spec);

// Either the stored columns as-is, or their lazy pairwise expansion.
RegressionData MakeRegressionData(const RegressionTable& table, bool pairwise);

enum class SyntheticKind { kPairwiseProducts, kPlantedRegression, kCoverageRandom };

// Throws ParameterError for unknown names.
SyntheticKind ParseSyntheticKind(const std::string& name);
const char* SyntheticKindName(SyntheticKind kind);

struct SyntheticDims {
  std::size_t p = 8;         // base features (regression kinds)
  std::size_t rows = 500;    // observations (regression kinds)
  std::size_t planted = 5;   // nonzero expanded columns in the signal
  double noise = 1.0;        // response noise standard deviation
  std::size_t n = 12;        // sets (coverage)
  std::size_t universe = 20; // universe items (coverage)

  void Validate(SyntheticKind kind) const;
};

// Base features with a response driven by a few planted columns of the
// pairwise-expanded design (p + p(p+1)/2 columns).
struct PlantedData {
  RegressionTable table;
  std::vector<std::size_t> planted_columns;  // expanded-column indices
  std::vector<double> coefficients;
  std::size_t expanded_columns = 0;
};

// Continuous response: y = sum beta_j x_j + noise.
PlantedData GeneratePlantedRegression(const SyntheticDims& dims,
                                      std::uint64_t seed);
// Binary response: y ~ Bernoulli(sigmoid(sum beta_j x_j)).
PlantedData GeneratePairwiseProducts(const SyntheticDims& dims,
                                     std::uint64_t seed);
// Sets of random size over a universe with integer weights in [1, 5].
CoverageSpec GenerateCoverage(const SyntheticDims& dims, std::uint64_t seed);

struct GeneratedSummary {
  SyntheticKind kind;
  std::size_t ground_set_size;  // N the resulting objective exposes
};

// Generates and writes one dataset. Regression kinds write CSV (base
// features only; the objective expands them), coverage writes JSON.
GeneratedSummary GenerateSyntheticFile(SyntheticKind kind,
                                       const SyntheticDims& dims,
                                       std::uint64_t seed,
                                       const std::string& path);

}  // namespace streamweak

#endif  // STREAMWEAK_DATASETS_H_
