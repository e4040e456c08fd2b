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

#ifndef DBANDIT_NTK_HPP_
#define DBANDIT_NTK_HPP_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dbandit/network.hpp"

namespace dbandit {

// NTK Gram matrix of a depth-L ReLU network on a finite context set, with
// every level of the recursion kept for inspection.
struct NtkGram {
  int depth = 2;
  Eigen::MatrixXd h;                      // (H~^{(L)} + Sigma^{(L)}) / 2
  std::vector<Eigen::MatrixXd> sigma;     // Sigma^{(1..L)}
  std::vector<Eigen::MatrixXd> h_tilde;   // H~^{(1..L)}
};

// Closed-form (arc-cosine) evaluation of the Gaussian expectations:
//   2 E[relu(u) relu(v)]   = sqrt(a b) / pi * (sin t + (pi - t) cos t)
//   2 E[relu'(u) relu'(v)] = (pi - t) / pi
// where t = arccos(c / sqrt(a b)) for u, v ~ N(0, [[a, c], [c, b]]).
NtkGram ntk_gram(std::span<const Vector> contexts, int depth);

// One step of the recursion for a single covariance block; exposed for tests.
struct ArcCosine {
  double sigma_next;   // 2 E[relu(u) relu(v)]
  double derivative;   // 2 E[relu'(u) relu'(v)]
};
ArcCosine arc_cosine(double var_i, double var_j, double cov);

// log det(I + H/lambda) / log(1 + n/lambda), n = T*K. Throws NumericError if
// H is not symmetric PSD within tolerance.
double effective_dimension(const Eigen::MatrixXd& h, double lambda, double n);

double smallest_eigenvalue(const Eigen::MatrixXd& h);

struct DelayBoundParams {
  double horizon = 1.0;
  double delta = 0.05;
  double expected_delay = 0.0;
  double alpha = 0.0;
  double b = 0.0;
};

struct DelayConstants {
  double d_plus = 0.0;
  double d_tau = 0.0;
  double psi_tau = 0.0;
};

// D_+ = 1 + 2 E[tau] + D_tau + psi_tau with l = log(3T / (2 delta)),
//   D_tau   = min(sqrt(2 alpha^2 l), 2 b l)   (b = 0: the alpha branch)
//   psi_tau = 4/3 l + 2 sqrt(2 E[tau] l).
DelayConstants d_plus(const DelayBoundParams& params);

struct RegretBoundInputs {
  double horizon = 1.0;
  int arms = 1;
  double lambda = 1.0;
  double nu = 1.0;
  double delta = 0.05;
  double norm_s = 1.0;
  double eta = 0.0;
  double width = 1.0;
  int steps = 0;
  int depth = 2;
  double c4 = 0.0;
  double d_tilde = 0.0;
  double d_plus = 0.0;
  bool sqrt_lambda_times_s = true;
};

// High-probability cumulative-regret bound for Delayed NeuralUCB:
//   [sqrt(T(2 d log(1+TK/l)+2)) + D_+/2 (2 d log(1+TK/l)+2)]
//   * [2(nu sqrt(d log(1+TK/l) + 2 - 2 log delta) + 2 sqrt(l) S)
//      + 2(l + C4 T L)(1 - eta m l)^{J/2} sqrt(T/l)] + 1.
double regret_bound(const RegretBoundInputs& in);

}  // namespace dbandit

#endif  // DBANDIT_NTK_HPP_
