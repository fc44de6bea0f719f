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

#include "streamweak/objectives.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "streamweak/error.h"
#include "streamweak/log.h"

namespace streamweak {
namespace {

// log(1 + e^x) without overflow.
double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

ModularObjective::ModularObjective(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw ParameterError("modular objective needs weights");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw ParameterError("modular weight " + std::to_string(i) +
                           " must be finite and nonnegative");
    }
  }
}

double ModularObjective::Value(std::span<const ElementId> members) {
  double total = 0.0;
  for (const ElementId u : members) total += weights_[u.value];
  return total;
}

CoverageObjective::CoverageObjective(
    std::vector<std::vector<std::uint32_t>> sets,
    std::vector<double> universe_weights)
    : sets_(std::move(sets)), weights_(std::move(universe_weights)) {
  if (sets_.empty()) throw ParameterError("coverage objective needs sets");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw ParameterError("universe weight " + std::to_string(i) +
                           " must be finite and nonnegative");
    }
  }
  for (std::size_t s = 0; s < sets_.size(); ++s) {
    for (const std::uint32_t item : sets_[s]) {
      if (item >= weights_.size()) {
        throw ParameterError("set " + std::to_string(s) + " names item " +
                             std::to_string(item) + " outside universe of " +
                             std::to_string(weights_.size()));
      }
    }
  }
}

double CoverageObjective::Value(std::span<const ElementId> members) {
  std::vector<char> covered(weights_.size(), 0);
  double total = 0.0;
  for (const ElementId u : members) {
    for (const std::uint32_t item : sets_[u.value]) {
      if (!covered[item]) {
        covered[item] = 1;
        total += weights_[item];
      }
    }
  }
  return total;
}

ElementId HardInstanceParams::U(std::size_t i) const {
  return ElementId(static_cast<std::uint32_t>(i));
}

ElementId HardInstanceParams::V(std::size_t i) const {
  return ElementId(static_cast<std::uint32_t>(k + i));
}

void HardInstanceParams::Validate() const {
  if (k == 0) throw ParameterError("hard instance needs k >= 1");
  if (size() > (std::size_t{1} << 31)) {
    throw ParameterError("hard instance ground set too large");
  }
}

HardInstance::HardInstance(HardInstanceParams params) : params_(params) {
  params_.Validate();
}

double HardInstance::Value(std::span<const ElementId> members) {
  std::size_t u = 0;
  std::size_t v = 0;
  for (const ElementId e : members) {
    if (params_.IsU(e)) ++u;
    if (params_.IsV(e)) ++v;
  }
  return static_cast<double>(std::min(2 * u + 1, 2 * v));
}

std::string ColumnSource::ColumnName(std::size_t col) const {
  return "x" + std::to_string(col);
}

DenseColumns::DenseColumns(Eigen::MatrixXd x, std::vector<std::string> names)
    : x_(std::move(x)), names_(std::move(names)) {
  if (!names_.empty() && names_.size() != static_cast<std::size_t>(x_.cols())) {
    throw ParameterError("column names do not match column count");
  }
}

void DenseColumns::Fill(std::size_t col, Eigen::Ref<Eigen::VectorXd> out) const {
  out = x_.col(static_cast<Eigen::Index>(col));
}

std::string DenseColumns::ColumnName(std::size_t col) const {
  return names_.empty() ? ColumnSource::ColumnName(col) : names_[col];
}

PairwiseProductColumns::PairwiseProductColumns(Eigen::MatrixXd base,
                                               std::vector<std::string> names)
    : base_(std::move(base)), names_(std::move(names)) {
  const std::size_t p = base_.cols();
  if (!names_.empty() && names_.size() != p) {
    throw ParameterError("column names do not match column count");
  }
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a; b < p; ++b) pairs_.emplace_back(a, b);
  }
}

std::pair<std::size_t, std::size_t> PairwiseProductColumns::Factors(
    std::size_t col) const {
  return pairs_[col - base_.cols()];
}

void PairwiseProductColumns::Fill(std::size_t col,
                                  Eigen::Ref<Eigen::VectorXd> out) const {
  const std::size_t p = base_.cols();
  if (col < p) {
    out = base_.col(static_cast<Eigen::Index>(col));
    return;
  }
  const auto [a, b] = pairs_[col - p];
  out = base_.col(static_cast<Eigen::Index>(a))
            .cwiseProduct(base_.col(static_cast<Eigen::Index>(b)));
}

std::string PairwiseProductColumns::ColumnName(std::size_t col) const {
  const std::size_t p = base_.cols();
  auto base_name = [&](std::size_t j) {
    return names_.empty() ? "x" + std::to_string(j) : names_[j];
  };
  if (col < p) return base_name(col);
  const auto [a, b] = pairs_[col - p];
  return base_name(a) + "*" + base_name(b);
}

void RegressionData::Validate() const {
  if (!x) throw ParameterError("regression data has no design matrix");
  if (x->rows() == 0) throw ParameterError("regression data has no rows");
  if (x->cols() == 0) throw ParameterError("regression data has no columns");
  if (static_cast<std::size_t>(y.size()) != x->rows()) {
    throw ParameterError("response length " + std::to_string(y.size()) +
                         " does not match " + std::to_string(x->rows()) +
                         " rows");
  }
  if (!y.allFinite()) throw ParameterError("response has non-finite entries");
  Eigen::VectorXd column(x->rows());
  for (std::size_t j = 0; j < x->cols(); ++j) {
    x->Fill(j, column);
    if (!column.allFinite()) {
      throw ParameterError("column " + x->ColumnName(j) +
                           " has non-finite entries");
    }
  }
}

R2Objective::R2Objective(RegressionData data) : data_(std::move(data)) {
  data_.Validate();
  y_centered_ = data_.y.array() - data_.y.mean();
  total_ss_ = y_centered_.squaredNorm();
}

double R2Objective::Value(std::span<const ElementId> members) {
  if (members.empty() || total_ss_ <= 0.0) return 0.0;
  const auto rows = static_cast<Eigen::Index>(data_.x->rows());
  if (members.size() > data_.x->rows()) {
    throw PreconditionError("R^2 needs |S| <= rows");
  }
  // Sorted column order keeps the value independent of member order.
  std::vector<ElementId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  Eigen::MatrixXd design(rows, static_cast<Eigen::Index>(sorted.size()));
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    auto col = design.col(static_cast<Eigen::Index>(j));
    data_.x->Fill(sorted[j].value, col);
    col.array() -= col.mean();
  }
  const Eigen::VectorXd beta =
      design.completeOrthogonalDecomposition().solve(y_centered_);
  const double rss = (y_centered_ - design * beta).squaredNorm();
  return std::clamp(1.0 - rss / total_ss_, 0.0, 1.0);
}

LogisticObjective::LogisticObjective(RegressionData data,
                                     LogisticFitOptions options)
    : data_(std::move(data)), options_(options) {
  data_.Validate();
  for (Eigen::Index i = 0; i < data_.y.size(); ++i) {
    if (data_.y[i] != 0.0 && data_.y[i] != 1.0) {
      throw ParameterError("logistic labels must be 0 or 1, row " +
                           std::to_string(i) + " has " +
                           std::to_string(data_.y[i]));
    }
  }
  baseline_ = FitColumns({}).log_likelihood;
}

LogisticObjective::Fit LogisticObjective::FitColumns(
    std::span<const ElementId> members) const {
  const auto rows = static_cast<Eigen::Index>(data_.x->rows());
  std::vector<ElementId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  const auto width = static_cast<Eigen::Index>(sorted.size() + 1);
  Eigen::MatrixXd design(rows, width);
  design.col(0).setOnes();
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    data_.x->Fill(sorted[j].value, design.col(static_cast<Eigen::Index>(j + 1)));
  }
  const Eigen::VectorXd& y = data_.y;
  const double lambda = options_.ridge;

  auto log_likelihood = [&](const Eigen::VectorXd& eta) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      total += y[i] * eta[i] - Softplus(eta[i]);
    }
    return total;
  };
  auto penalized = [&](const Eigen::VectorXd& beta, double ll) {
    return ll - 0.5 * lambda * beta.squaredNorm();
  };

  // Start from the intercept-only maximum likelihood estimate.
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(width);
  const double mean = std::clamp(y.mean(), 1e-12, 1.0 - 1e-12);
  beta[0] = std::log(mean / (1.0 - mean));
  Eigen::VectorXd eta = design * beta;
  double ll = log_likelihood(eta);
  double objective = penalized(beta, ll);

  Fit fit{ll, 0, false};
  for (int iter = 0; iter < options_.max_iterations; ++iter) {
    Eigen::VectorXd p(rows);
    Eigen::VectorXd w(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      p[i] = Sigmoid(eta[i]);
      w[i] = p[i] * (1.0 - p[i]);
    }
    const Eigen::VectorXd gradient =
        design.transpose() * (y - p) - lambda * beta;
    if (gradient.norm() < options_.gradient_tolerance) {
      fit.converged = true;
      break;
    }
    Eigen::MatrixXd hessian = design.transpose() * w.asDiagonal() * design;
    hessian.diagonal().array() += lambda;
    const Eigen::VectorXd step = hessian.ldlt().solve(gradient);

    double scale = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving, scale *= 0.5) {
      const Eigen::VectorXd trial = beta + scale * step;
      const Eigen::VectorXd trial_eta = design * trial;
      const double trial_ll = log_likelihood(trial_eta);
      const double trial_objective = penalized(trial, trial_ll);
      if (trial_objective >= objective) {
        beta = trial;
        eta = trial_eta;
        ll = trial_ll;
        objective = trial_objective;
        improved = true;
        break;
      }
    }
    fit.iterations = iter + 1;
    fit.log_likelihood = ll;
    if (!improved) break;  // stalled at the best iterate
  }
  fit.log_likelihood = ll;
  return fit;
}

double LogisticObjective::Value(std::span<const ElementId> members) {
  if (members.empty()) return 0.0;
  const Fit fit = FitColumns(members);
  if (!fit.converged) {
    nonconverged_.fetch_add(1, std::memory_order_relaxed);
    Log().debug("logistic fit on {} columns stopped after {} iterations",
                members.size(), fit.iterations);
  }
  // Per-observation gain, so values are comparable across sample sizes.
  return std::max(0.0, (fit.log_likelihood - baseline_) /
                           static_cast<double>(data_.x->rows()));
}

OracleStats LogisticObjective::stats() const {
  OracleStats s;
  s.warnings = nonconverged_.load();
  return s;
}

}  // namespace streamweak
