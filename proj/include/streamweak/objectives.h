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

#ifndef STREAMWEAK_OBJECTIVES_H_
#define STREAMWEAK_OBJECTIVES_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "streamweak/oracle.h"
#include "streamweak/types.h"

namespace streamweak {

// f(S) = sum of w_i over S.
class ModularObjective final : public Valuation {
 public:
  explicit ModularObjective(std::vector<double> weights);

  std::size_t size() const override { return weights_.size(); }
  double Value(std::span<const ElementId> members) override;
  std::string name() const override { return "modular"; }

 private:
  std::vector<double> weights_;
};

// Weighted coverage: f(S) = total weight of the universe items covered by
// the union of sets[i], i in S.
class CoverageObjective final : public Valuation {
 public:
  CoverageObjective(std::vector<std::vector<std::uint32_t>> sets,
                    std::vector<double> universe_weights);

  std::size_t size() const override { return sets_.size(); }
  double Value(std::span<const ElementId> members) override;
  std::string name() const override { return "coverage"; }

  const std::vector<std::vector<std::uint32_t>>& sets() const { return sets_; }
  const std::vector<double>& universe_weights() const { return weights_; }

 private:
  std::vector<std::vector<std::uint32_t>> sets_;
  std::vector<double> weights_;
};

// Layout of the worst-case-order instance: ids [0, k) are u-elements,
// [k, 2k) are v-elements and [2k, 2k + d) are dummies.
struct HardInstanceParams {
  std::size_t k = 1;
  std::size_t d = 0;

  std::size_t size() const { return 2 * k + d; }
  bool IsU(ElementId e) const { return e.value < k; }
  bool IsV(ElementId e) const { return e.value >= k && e.value < 2 * k; }
  bool IsDummy(ElementId e) const { return e.value >= 2 * k; }
  ElementId U(std::size_t i) const;  // i in [0, k)
  ElementId V(std::size_t i) const;  // i in [0, k)
  void Validate() const;
};

// f(S) = min{2 u(S) + 1, 2 v(S)}; dummies never change the value.
// Nonnegative, monotone, and 0.5-weakly submodular.
class HardInstance final : public Valuation {
 public:
  explicit HardInstance(HardInstanceParams params);

  std::size_t size() const override { return params_.size(); }
  double Value(std::span<const ElementId> members) override;
  std::string name() const override { return "hard"; }
  const HardInstanceParams& params() const { return params_; }

 private:
  HardInstanceParams params_;
};

// Read-only design matrix that can materialize any one column on demand.
class ColumnSource {
 public:
  virtual ~ColumnSource() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual void Fill(std::size_t col, Eigen::Ref<Eigen::VectorXd> out) const = 0;
  virtual std::string ColumnName(std::size_t col) const;
};

class DenseColumns final : public ColumnSource {
 public:
  explicit DenseColumns(Eigen::MatrixXd x,
                        std::vector<std::string> names = {});

  std::size_t rows() const override { return x_.rows(); }
  std::size_t cols() const override { return x_.cols(); }
  void Fill(std::size_t col, Eigen::Ref<Eigen::VectorXd> out) const override;
  std::string ColumnName(std::size_t col) const override;

 private:
  Eigen::MatrixXd x_;
  std::vector<std::string> names_;
};

// The p base columns followed by all p(p+1)/2 products x_a * x_b (a <= b),
// computed when requested rather than stored.
class PairwiseProductColumns final : public ColumnSource {
 public:
  explicit PairwiseProductColumns(Eigen::MatrixXd base,
                                  std::vector<std::string> names = {});

  static std::size_t ExpandedCount(std::size_t p) { return p + p * (p + 1) / 2; }

  std::size_t rows() const override { return base_.rows(); }
  std::size_t cols() const override { return pairs_.size() + base_.cols(); }
  void Fill(std::size_t col, Eigen::Ref<Eigen::VectorXd> out) const override;
  std::string ColumnName(std::size_t col) const override;
  std::pair<std::size_t, std::size_t> Factors(std::size_t col) const;

 private:
  Eigen::MatrixXd base_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

struct RegressionData {
  std::shared_ptr<const ColumnSource> x;
  Eigen::VectorXd y;

  // Throws ParameterError on shape mismatch or non-finite entries.
  void Validate() const;
};

// Goodness of fit R^2 of the least-squares regression of y on the columns
// in S plus an intercept. f(empty) = 0; zero-variance y gives 0 everywhere.
class R2Objective final : public Valuation {
 public:
  explicit R2Objective(RegressionData data);

  std::size_t size() const override { return data_.x->cols(); }
  double Value(std::span<const ElementId> members) override;
  std::string name() const override { return "r2"; }

 private:
  RegressionData data_;
  Eigen::VectorXd y_centered_;
  double total_ss_;
};

struct LogisticFitOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;
  double ridge = 1e-6;
};

// Log-likelihood gain of a logistic regression on the columns in S (plus
// intercept) over the intercept-only model, fitted by Newton/IRLS with
// step halving. f(empty) = 0 and f >= 0.
class LogisticObjective final : public Valuation {
 public:
  explicit LogisticObjective(RegressionData data,
                             LogisticFitOptions options = {});

  std::size_t size() const override { return data_.x->cols(); }
  double Value(std::span<const ElementId> members) override;
  OracleStats stats() const override;
  std::string name() const override { return "logistic"; }

  struct Fit {
    double log_likelihood;
    int iterations;
    bool converged;
  };
  Fit FitColumns(std::span<const ElementId> members) const;
  double baseline_log_likelihood() const { return baseline_; }

 private:
  RegressionData data_;
  LogisticFitOptions options_;
  double baseline_;
  mutable std::atomic<std::uint64_t> nonconverged_{0};
};

}  // namespace streamweak

#endif  // STREAMWEAK_OBJECTIVES_H_
