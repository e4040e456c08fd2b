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

#ifndef DBANDIT_NETWORK_HPP_
#define DBANDIT_NETWORK_HPP_

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dbandit/rng.hpp"

namespace dbandit {

using Vector = Eigen::VectorXd;

// Fully connected ReLU network geometry. Weights are
//   W_1 : width x input_dim,  W_l : width x width (2 <= l <= depth-1),
//   W_L : 1 x width.
struct NetworkShape {
  int depth = 2;
  int width = 2;
  int input_dim = 2;

  // Throws ConfigError unless depth >= 2 and width, input_dim are even and >= 2.
  void validate() const;

  // m*d + (L-2)*m^2 + m.
  std::size_t param_count() const;

  // Offset of W_l (1-based layer index) inside the flattened vector.
  std::size_t layer_offset(int layer) const;
  int layer_rows(int layer) const;
  int layer_cols(int layer) const;

  friend bool operator==(const NetworkShape&, const NetworkShape&) = default;
};

// Flattened parameters [vec(W_1); ...; vec(W_L)], each W_l stored row-major.
struct ParamVector {
  NetworkShape shape;
  Vector values;

  ParamVector() = default;
  ParamVector(NetworkShape s, Vector v);
  static ParamVector zeros(const NetworkShape& s);

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }

  // Row-major view of layer `layer` (1-based).
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
  layer(int layer) const;
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                           Eigen::RowMajor>>
  layer(int layer);

  bool all_finite() const { return values.allFinite(); }
};

// Block-symmetric Gaussian initialization: W_l = diag(B_l, B_l) for hidden
// layers with entries N(0, 4/m), W_L = (w, -w) with w ~ N(0, 2/m). The output
// is exactly zero on every input whose two halves coincide.
ParamVector init_symmetric(const NetworkShape& shape, Rng& rng);

// sqrt(m) * W_L relu(W_{L-1} ... relu(W_1 x)).
double forward(const ParamVector& theta, const Vector& x);

// Exact gradient of forward() with respect to every parameter. The ReLU
// derivative at 0 is taken to be 0.
ParamVector gradient(const ParamVector& theta, const Vector& x);

// Output and gradient from one forward/backward pass. `grad` must already be
// sized to theta.size().
double forward_backward(const ParamVector& theta, const Vector& x, Vector& grad);

struct BanditRecord {
  int round = 0;    // 1-based round the action was taken
  Vector context;   // feature vector of the chosen arm
  int action = 0;   // 1-based arm index
  double reward = 0.0;
};

struct FullBatch {};
struct MiniBatch {
  int batch_size = 64;
};

struct TrainSpec {
  double lambda = 1.0;
  double eta = 0.001;
  int steps = 0;
  std::variant<FullBatch, MiniBatch> batch = FullBatch{};

  void validate() const;
};

// Regularized squared loss
//   sum_i (f(x_i) - r_i)^2 / 2 + m * lambda * |theta - anchor|^2 / 2.
double training_loss(const ParamVector& theta, const ParamVector& anchor,
                     std::span<const BanditRecord> data, double lambda);

// Runs spec.steps gradient-descent updates starting at `start`. The
// regularizer is always centred on `anchor` (the run's initial parameters);
// pass anchor == start for the plain restart-from-initialization variant.
// `mask`, when non-empty, zeroes gradient coordinates where mask == 0 (frozen
// parameters). Throws DivergedTrainingError on a non-finite loss.
ParamVector train_nn(const ParamVector& start, const ParamVector& anchor,
                     std::span<const BanditRecord> data, const TrainSpec& spec,
                     Rng& rng, const Vector& mask = Vector());

inline ParamVector train_nn(const ParamVector& theta0,
                            std::span<const BanditRecord> data,
                            const TrainSpec& spec, Rng& rng) {
  return train_nn(theta0, theta0, data, spec, rng);
}

}  // namespace dbandit

#endif  // DBANDIT_NETWORK_HPP_
