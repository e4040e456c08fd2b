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

// Monte Carlo evaluation of one NTK recursion step for a pair of inputs with
// covariance [[a, c], [c, b]]: per-sample estimates of
//   2 relu(u) relu(v)                              (next Sigma entry)
//   h_prev * 2 relu'(u) relu'(v) + 2 relu(u) relu(v)  (next H~ entry)
// with their standard errors.

#ifndef DBANDIT_TESTS_NTK_ORACLE_HPP_
#define DBANDIT_TESTS_NTK_ORACLE_HPP_

#include <cmath>
#include <random>

namespace dbandit::testing {

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct McStep {
  McEstimate sigma;
  McEstimate h_tilde;
};

inline McStep monte_carlo_step(double a, double b, double c, double h_prev, int samples,
                               std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  // Cholesky of the 2x2 covariance; the clamp guards exactly collinear pairs.
  const double l11 = std::sqrt(a);
  const double l21 = c / l11;
  const double l22 = std::sqrt(std::max(b - l21 * l21, 0.0));
  double s_sum = 0.0, s_sq = 0.0, h_sum = 0.0, h_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double z1 = n(gen);
    const double z2 = n(gen);
    const double u = l11 * z1;
    const double v = l21 * z1 + l22 * z2;
    const double s = 2.0 * std::max(u, 0.0) * std::max(v, 0.0);
    const double d = (u > 0.0 && v > 0.0) ? 2.0 : 0.0;
    const double h = h_prev * d + s;
    s_sum += s;
    s_sq += s * s;
    h_sum += h;
    h_sq += h * h;
  }
  auto finish = [samples](double sum, double sq) {
    const double mean = sum / samples;
    const double var = std::max(sq / samples - mean * mean, 0.0) * samples / (samples - 1.0);
    return McEstimate{mean, std::sqrt(var / samples)};
  };
  return {finish(s_sum, s_sq), finish(h_sum, h_sq)};
}

}  // namespace dbandit::testing

#endif  // DBANDIT_TESTS_NTK_ORACLE_HPP_
