// Copyright 2026 The dbandit Authors.
//
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

#ifndef DBANDIT_DESIGN_MATRIX_HPP_
#define DBANDIT_DESIGN_MATRIX_HPP_

#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace dbandit {

enum class DesignMode { kFull, kDiagonal };

std::string_view to_string(DesignMode mode);
DesignMode parse_design_mode(std::string_view text);

// Regularized Gram accumulator Z = lambda*I + sum u u^T.
//
// Full mode keeps Z and Z^{-1}; the inverse is maintained by Sherman-Morrison
// and rebuilt from a Cholesky factorization every kRefreshPeriod updates.
// Diagonal mode keeps only diag(Z) and treats Z as that diagonal matrix.
class DesignMatrix {
 public:
  static constexpr std::size_t kRefreshPeriod = 512;

  DesignMatrix(std::size_t dim, double lambda, DesignMode mode);

  void rank1_update(const Eigen::VectorXd& u);

  // u^T Z^{-1} u.
  double quad_form(const Eigen::VectorXd& u) const;

  // log det(Z) - p log(lambda).
  double logdet_ratio() const { return logdet_ratio_; }

  // Z^{-1} v.
  Eigen::VectorXd solve(const Eigen::VectorXd& v) const;

  // A draw with covariance Z^{-1} from a standard-normal vector z.
  Eigen::VectorXd inverse_sqrt_apply(const Eigen::VectorXd& z) const;

  // Recomputes Z^{-1} and the log-determinant from a fresh factorization.
  void refresh();

  DesignMode mode() const { return mode_; }
  std::size_t dim() const { return dim_; }
  double lambda() const { return lambda_; }
  std::size_t update_count() const { return update_count_; }

  // Full mode only; Diagonal mode returns the diagonal as a dense matrix.
  Eigen::MatrixXd matrix() const;
  Eigen::MatrixXd inverse() const;
  const Eigen::VectorXd& diagonal() const { return diag_; }

 private:
  void check_dim(const Eigen::VectorXd& u) const;

  std::size_t dim_;
  double lambda_;
  DesignMode mode_;
  std::size_t update_count_ = 0;
  double logdet_ratio_ = 0.0;
  Eigen::MatrixXd z_;
  Eigen::MatrixXd z_inv_;
  Eigen::VectorXd diag_;
};

}  // namespace dbandit

#endif  // DBANDIT_DESIGN_MATRIX_HPP_
