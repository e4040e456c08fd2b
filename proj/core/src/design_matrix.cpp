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

#include "dbandit/design_matrix.hpp"

#include <cmath>
#include <string>

#include "dbandit/errors.hpp"

namespace dbandit {

std::string_view to_string(DesignMode mode) {
  return mode == DesignMode::kFull ? "full" : "diagonal";
}

DesignMode parse_design_mode(std::string_view text) {
  if (text == "full") return DesignMode::kFull;
  if (text == "diagonal") return DesignMode::kDiagonal;
  throw ConfigError("unknown design mode '" + std::string(text) +
                    "' (expected full or diagonal)");
}

DesignMatrix::DesignMatrix(std::size_t dim, double lambda, DesignMode mode)
    : dim_(dim), lambda_(lambda), mode_(mode) {
  if (dim == 0) throw ConfigError("design matrix dimension must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ConfigError("design matrix lambda must be > 0");
  const auto n = static_cast<Eigen::Index>(dim);
  diag_ = Eigen::VectorXd::Constant(n, lambda);
  if (mode_ == DesignMode::kFull) {
    z_ = lambda * Eigen::MatrixXd::Identity(n, n);
    z_inv_ = (1.0 / lambda) * Eigen::MatrixXd::Identity(n, n);
  }
}

void DesignMatrix::check_dim(const Eigen::VectorXd& u) const {
  if (static_cast<std::size_t>(u.size()) != dim_)
    throw ArgumentError("design matrix expects vectors of length " +
                        std::to_string(dim_) + ", got " +
                        std::to_string(u.size()));
}

void DesignMatrix::rank1_update(const Eigen::VectorXd& u) {
  check_dim(u);
  ++update_count_;
  if (mode_ == DesignMode::kDiagonal) {
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double before = diag_[i];
      diag_[i] += u[i] * u[i];
      logdet_ratio_ += std::log(diag_[i] / before);
    }
    return;
  }
  z_.selfadjointView<Eigen::Lower>().rankUpdate(u);
  const Eigen::VectorXd zu = z_inv_.selfadjointView<Eigen::Lower>() * u;
  const double denom = 1.0 + u.dot(zu);
  // Matrix determinant lemma: det(Z + uu^T) = det(Z) (1 + u^T Z^{-1} u).
  logdet_ratio_ += std::log1p(u.dot(zu));
  z_inv_.selfadjointView<Eigen::Lower>().rankUpdate(zu, -1.0 / denom);
  diag_ += u.cwiseProduct(u);
  if (update_count_ % kRefreshPeriod == 0) refresh();
}

void DesignMatrix::refresh() {
  if (mode_ == DesignMode::kDiagonal) {
    logdet_ratio_ = (diag_.array() / lambda_).log().sum();
    return;
  }
  const Eigen::MatrixXd full = matrix();
  Eigen::LLT<Eigen::MatrixXd> llt(full);
  if (llt.info() != Eigen::Success)
    throw NumericError("design matrix lost positive definiteness");
  const auto n = static_cast<Eigen::Index>(dim_);
  z_inv_ = llt.solve(Eigen::MatrixXd::Identity(n, n));
  logdet_ratio_ = 2.0 * llt.matrixLLT().diagonal().array().log().sum() -
                  static_cast<double>(dim_) * std::log(lambda_);
}

double DesignMatrix::quad_form(const Eigen::VectorXd& u) const {
  check_dim(u);
  if (mode_ == DesignMode::kDiagonal)
    return (u.array().square() / diag_.array()).sum();
  const double q = u.dot(z_inv_.selfadjointView<Eigen::Lower>() * u);
  return q > 0.0 ? q : 0.0;
}

Eigen::VectorXd DesignMatrix::solve(const Eigen::VectorXd& v) const {
  check_dim(v);
  if (mode_ == DesignMode::kDiagonal) return v.cwiseQuotient(diag_);
  return z_inv_.selfadjointView<Eigen::Lower>() * v;
}

Eigen::VectorXd DesignMatrix::inverse_sqrt_apply(const Eigen::VectorXd& z) const {
  check_dim(z);
  if (mode_ == DesignMode::kDiagonal) return z.cwiseQuotient(diag_.cwiseSqrt());
  // With Z = R R^T, R^{-T} z has covariance (R R^T)^{-1}.
  Eigen::LLT<Eigen::MatrixXd> llt(matrix());
  if (llt.info() != Eigen::Success)
    throw NumericError("design matrix lost positive definiteness");
  return llt.matrixU().solve(z);
}

Eigen::MatrixXd DesignMatrix::matrix() const {
  if (mode_ == DesignMode::kDiagonal) return diag_.asDiagonal();
  return z_.selfadjointView<Eigen::Lower>();
}

Eigen::MatrixXd DesignMatrix::inverse() const {
  if (mode_ == DesignMode::kDiagonal) return diag_.cwiseInverse().asDiagonal();
  return z_inv_.selfadjointView<Eigen::Lower>();
}

}  // namespace dbandit
