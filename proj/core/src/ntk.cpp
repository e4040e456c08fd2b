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

#include "dbandit/ntk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dbandit/errors.hpp"

namespace dbandit {

ArcCosine arc_cosine(double var_i, double var_j, double cov) {
  const double scale = std::sqrt(var_i * var_j);
  const double c = std::clamp(cov / scale, -1.0, 1.0);
  const double t = std::acos(c);
  constexpr double pi = std::numbers::pi;
  return {scale / pi * (std::sin(t) + (pi - t) * c), (pi - t) / pi};
}

NtkGram ntk_gram(std::span<const Vector> contexts, int depth) {
  if (depth < 2) throw ConfigError("NTK depth must be >= 2");
  if (contexts.empty()) throw ArgumentError("NTK needs at least one context");
  const auto n = static_cast<Eigen::Index>(contexts.size());
  const Eigen::Index dim = contexts.front().size();
  Eigen::MatrixXd x(n, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& c = contexts[static_cast<std::size_t>(i)];
    if (c.size() != dim) throw ArgumentError("NTK contexts differ in dimension");
    if (!(c.norm() > 0.0))
      throw DegenerateContextError("NTK context " + std::to_string(i) + " has zero norm");
    x.row(i) = c.transpose();
  }

  NtkGram out;
  out.depth = depth;
  Eigen::MatrixXd sigma = x * x.transpose();
  Eigen::MatrixXd h_tilde = sigma;
  out.sigma.push_back(sigma);
  out.h_tilde.push_back(h_tilde);
  for (int l = 1; l < depth; ++l) {
    Eigen::MatrixXd next_sigma(n, n);
    Eigen::MatrixXd next_h(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        const ArcCosine ac = arc_cosine(sigma(i, i), sigma(j, j), sigma(i, j));
        next_sigma(i, j) = next_sigma(j, i) = ac.sigma_next;
        next_h(i, j) = next_h(j, i) = h_tilde(i, j) * ac.derivative + ac.sigma_next;
      }
    }
    sigma = std::move(next_sigma);
    h_tilde = std::move(next_h);
    out.sigma.push_back(sigma);
    out.h_tilde.push_back(h_tilde);
  }
  out.h = (h_tilde + sigma) / 2.0;
  return out;
}

double smallest_eigenvalue(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double effective_dimension(const Eigen::MatrixXd& h, double lambda, double n) {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (!(n > 0.0)) throw ArgumentError("context count must be > 0");
  if (h.rows() != h.cols()) throw ArgumentError("H must be square");
  if (h.size() == 0) return 0.0;
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1.0);
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw NumericError("H is not symmetric");

  // Sylvester inertia: the pivots of a symmetric LDL^T share the signs of the
  // eigenvalues, so a negative pivot below tolerance flags a non-PSD H.
  const double tol = 1e-8 * std::max(h.trace() / static_cast<double>(h.rows()), 1e-300);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() < -tol)
    throw NumericError("H is not positive semidefinite");

  const auto dim = h.rows();
  const Eigen::MatrixXd shifted = Eigen::MatrixXd::Identity(dim, dim) + h / lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success)
    throw NumericError("I + H/lambda is not positive definite");
  const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return logdet / std::log1p(n / lambda);
}

DelayConstants d_plus(const DelayBoundParams& p) {
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
  if (!(p.horizon >= 1.0)) throw ConfigError("horizon must be >= 1");
  if (p.expected_delay < 0.0 || p.alpha < 0.0 || p.b < 0.0)
    throw ConfigError("E[tau], alpha and b must be >= 0");
  const double l = std::log(3.0 * p.horizon / (2.0 * p.delta));
  DelayConstants out;
  const double alpha_branch = std::sqrt(2.0 * p.alpha * p.alpha * l);
  out.d_tau = p.b > 0.0 ? std::min(alpha_branch, 2.0 * p.b * l) : alpha_branch;
  out.psi_tau = 4.0 / 3.0 * l + 2.0 * std::sqrt(2.0 * p.expected_delay * l);
  out.d_plus = 1.0 + 2.0 * p.expected_delay + out.d_tau + out.psi_tau;
  return out;
}

double regret_bound(const RegretBoundInputs& in) {
  if (!(in.delta > 0.0 && in.delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
  if (!(in.lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (!(in.horizon >= 1.0) || in.arms < 1) throw ConfigError("T and K must be >= 1");
  if (in.d_tilde < 0.0 || in.d_plus < 0.0 || in.nu < 0.0 || in.norm_s < 0.0 ||
      in.c4 < 0.0 || in.steps < 0)
    throw ConfigError("regret bound inputs must be nonnegative");
  const double contraction = 1.0 - in.eta * in.width * in.lambda;
  if (contraction < 0.0 || contraction > 1.0)
    throw ConfigError("eta * m * lambda must lie in [0, 1]");

  const double t = in.horizon;
  const double info = in.d_tilde * std::log1p(t * in.arms / in.lambda);
  const double potential = 2.0 * info + 2.0;
  const double first = std::sqrt(t * potential) + in.d_plus / 2.0 * potential;
  const double offset = in.sqrt_lambda_times_s ? std::sqrt(in.lambda) * in.norm_s
                                               : std::sqrt(in.lambda * in.norm_s);
  const double radius =
      2.0 * (in.nu * std::sqrt(info + 2.0 - 2.0 * std::log(in.delta)) + 2.0 * offset);
  const double optimization = 2.0 * (in.lambda + in.c4 * t * in.depth) *
                              std::pow(contraction, in.steps / 2.0) *
                              std::sqrt(t / in.lambda);
  return first * (radius + optimization) + 1.0;
}

}  // namespace dbandit
