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

#include "streamweak/datasets.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "streamweak/error.h"
#include "streamweak/rng.h"

namespace streamweak {
namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseNumber(const std::string& text, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE ||
      !std::isfinite(value)) {
    throw ParameterError("not a finite number '" + text + "' at " + where);
  }
  return value;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing: " +
                  std::strerror(errno));
  }
  return out;
}

std::string ReadWholeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "': " + std::strerror(errno));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Eigen::MatrixXd GaussianBase(const SyntheticDims& dims, Xoshiro256& rng) {
  Eigen::MatrixXd x(dims.rows, dims.p);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.Normal();
  }
  return x;
}

// Draws the planted expanded columns and their coefficients, and returns
// the linear predictor.
Eigen::VectorXd PlantSignal(const Eigen::MatrixXd& base,
                            const SyntheticDims& dims, Xoshiro256& rng,
                            PlantedData& out) {
  const PairwiseProductColumns expanded(base);
  out.expanded_columns = expanded.cols();
  std::vector<std::size_t> columns(expanded.cols());
  std::iota(columns.begin(), columns.end(), std::size_t{0});
  Shuffle(columns, rng);
  columns.resize(std::min(dims.planted, columns.size()));
  std::sort(columns.begin(), columns.end());

  Eigen::VectorXd eta = Eigen::VectorXd::Zero(base.rows());
  Eigen::VectorXd column(base.rows());
  for (const std::size_t j : columns) {
    const double magnitude = 1.0 + rng.Uniform();
    const double beta = rng.Uniform() < 0.5 ? -magnitude : magnitude;
    expanded.Fill(j, column);
    eta += beta * column;
    out.coefficients.push_back(beta);
  }
  out.planted_columns = std::move(columns);
  return eta;
}

std::vector<std::string> DefaultNames(std::size_t p) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < p; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

}  // namespace

RegressionTable ReadRegressionCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "': " + std::strerror(errno));
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParameterError("'" + path + "' is empty; expected a header row");
  }
  std::vector<std::string> header = SplitCsvLine(line);
  if (header.size() < 2 || header.back() != "y") {
    throw ParameterError("'" + path +
                         "' header must list feature columns then 'y'");
  }
  header.pop_back();
  const std::size_t p = header.size();

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != p + 1) {
      throw ParameterError(path + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(p + 1) + " fields, got " +
                           std::to_string(fields.size()));
    }
    for (const std::string& f : fields) {
      values.push_back(ParseNumber(f, path + ":" + std::to_string(line_no)));
    }
    ++rows;
  }
  if (rows == 0) throw ParameterError("'" + path + "' has no data rows");

  RegressionTable table;
  table.feature_names = std::move(header);
  table.x.resize(rows, p);
  table.y.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < p; ++j) table.x(i, j) = values[i * (p + 1) + j];
    table.y[i] = values[i * (p + 1) + p];
  }
  return table;
}

void WriteRegressionCsv(const std::string& path, const RegressionTable& table) {
  std::ofstream out = OpenForWrite(path);
  for (const std::string& name : table.feature_names) out << name << ',';
  out << "y\n";
  for (Eigen::Index i = 0; i < table.x.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.x.cols(); ++j) {
      out << FormatDouble(table.x(i, j)) << ',';
    }
    out << FormatDouble(table.y[i]) << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

CoverageSpec ParseCoverageJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("coverage JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("universe_weights") ||
      !doc.contains("sets")) {
    throw ParameterError(
        "coverage JSON must be an object with 'universe_weights' and 'sets'");
  }
  CoverageSpec spec;
  try {
    spec.universe_weights = doc.at("universe_weights").get<std::vector<double>>();
    spec.sets = doc.at("sets").get<std::vector<std::vector<std::uint32_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("coverage JSON: ") + e.what());
  }
  return spec;
}

CoverageSpec ReadCoverageJson(const std::string& path) {
  return ParseCoverageJson(ReadWholeFile(path));
}

std::string CoverageToJson(const CoverageSpec& spec) {
  nlohmann::json doc;
  doc["universe_weights"] = spec.universe_weights;
  doc["sets"] = spec.sets;
  return doc.dump();
}

void WriteCoverageJson(const std::string& path, const CoverageSpec& spec) {
  std::ofstream out = OpenForWrite(path);
  out << CoverageToJson(spec) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

RegressionData MakeRegressionData(const RegressionTable& table, bool pairwise) {
  RegressionData data;
  if (pairwise) {
    data.x = std::make_shared<PairwiseProductColumns>(table.x,
                                                      table.feature_names);
  } else {
    data.x = std::make_shared<DenseColumns>(table.x, table.feature_names);
  }
  data.y = table.y;
  return data;
}

SyntheticKind ParseSyntheticKind(const std::string& name) {
  if (name == "pairwise-products") return SyntheticKind::kPairwiseProducts;
  if (name == "planted-regression") return SyntheticKind::kPlantedRegression;
  if (name == "coverage-random") return SyntheticKind::kCoverageRandom;
  throw ParameterError("unknown synthetic kind '" + name +
                       "' (pairwise-products, planted-regression, "
                       "coverage-random)");
}

const char* SyntheticKindName(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::kPairwiseProducts:
      return "pairwise-products";
    case SyntheticKind::kPlantedRegression:
      return "planted-regression";
    case SyntheticKind::kCoverageRandom:
      return "coverage-random";
  }
  return "?";
}

void SyntheticDims::Validate(SyntheticKind kind) const {
  if (kind == SyntheticKind::kCoverageRandom) {
    if (n == 0 || universe == 0) {
      throw ParameterError("coverage needs n >= 1 and universe >= 1");
    }
    if (n > (1u << 24) || universe > (1u << 24) ||
        n * universe > (std::size_t{1} << 32)) {
      throw ParameterError("coverage dimensions too large");
    }
    return;
  }
  if (p == 0 || rows == 0) throw ParameterError("need p >= 1 and rows >= 1");
  if (p > 4096 || rows > 10'000'000 || rows * p > 100'000'000) {
    throw ParameterError("regression dimensions too large (p <= 4096, "
                         "rows * p <= 1e8)");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw ParameterError("noise must be finite and nonnegative");
  }
}

PlantedData GeneratePlantedRegression(const SyntheticDims& dims,
                                      std::uint64_t seed) {
  dims.Validate(SyntheticKind::kPlantedRegression);
  Xoshiro256 rng(seed);
  PlantedData out;
  out.table.x = GaussianBase(dims, rng);
  out.table.feature_names = DefaultNames(dims.p);
  const Eigen::VectorXd eta = PlantSignal(out.table.x, dims, rng, out);
  out.table.y.resize(dims.rows);
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    out.table.y[i] = eta[i] + dims.noise * rng.Normal();
  }
  return out;
}

PlantedData GeneratePairwiseProducts(const SyntheticDims& dims,
                                     std::uint64_t seed) {
  dims.Validate(SyntheticKind::kPairwiseProducts);
  Xoshiro256 rng(seed);
  PlantedData out;
  out.table.x = GaussianBase(dims, rng);
  out.table.feature_names = DefaultNames(dims.p);
  const Eigen::VectorXd eta = PlantSignal(out.table.x, dims, rng, out);
  out.table.y.resize(dims.rows);
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    const double prob = 1.0 / (1.0 + std::exp(-eta[i]));
    out.table.y[i] = rng.Uniform() < prob ? 1.0 : 0.0;
  }
  return out;
}

CoverageSpec GenerateCoverage(const SyntheticDims& dims, std::uint64_t seed) {
  dims.Validate(SyntheticKind::kCoverageRandom);
  Xoshiro256 rng(seed);
  CoverageSpec spec;
  for (std::size_t i = 0; i < dims.universe; ++i) {
    spec.universe_weights.push_back(static_cast<double>(1 + rng.Below(5)));
  }
  const std::size_t max_size = std::max<std::size_t>(1, dims.universe / 3);
  std::vector<std::uint32_t> items(dims.universe);
  std::iota(items.begin(), items.end(), 0u);
  for (std::size_t s = 0; s < dims.n; ++s) {
    Shuffle(items, rng);
    const std::size_t size = 1 + rng.Below(max_size);
    std::vector<std::uint32_t> set(items.begin(), items.begin() + size);
    std::sort(set.begin(), set.end());
    spec.sets.push_back(std::move(set));
  }
  return spec;
}

GeneratedSummary GenerateSyntheticFile(SyntheticKind kind,
                                       const SyntheticDims& dims,
                                       std::uint64_t seed,
                                       const std::string& path) {
  switch (kind) {
    case SyntheticKind::kPlantedRegression: {
      const PlantedData data = GeneratePlantedRegression(dims, seed);
      WriteRegressionCsv(path, data.table);
      return {kind, data.expanded_columns};
    }
    case SyntheticKind::kPairwiseProducts: {
      const PlantedData data = GeneratePairwiseProducts(dims, seed);
      WriteRegressionCsv(path, data.table);
      return {kind, data.expanded_columns};
    }
    case SyntheticKind::kCoverageRandom: {
      const CoverageSpec spec = GenerateCoverage(dims, seed);
      WriteCoverageJson(path, spec);
      return {kind, spec.sets.size()};
    }
  }
  throw ParameterError("unknown synthetic kind");
}

}  // namespace streamweak
