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

#include "dbandit/network.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dbandit/errors.hpp"

namespace dbandit {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void NetworkShape::validate() const {
  if (depth < 2) throw ConfigError("network depth must be >= 2");
  if (width < 2 || width % 2 != 0)
    throw ConfigError("network width must be even and >= 2, got " +
                      std::to_string(width));
  if (input_dim < 2 || input_dim % 2 != 0)
    throw ConfigError("network input_dim must be even and >= 2, got " +
                      std::to_string(input_dim));
}

std::size_t NetworkShape::param_count() const {
  const auto m = static_cast<std::size_t>(width);
  const auto d = static_cast<std::size_t>(input_dim);
  return m * d + static_cast<std::size_t>(depth - 2) * m * m + m;
}

int NetworkShape::layer_rows(int layer) const {
  return layer == depth ? 1 : width;
}

int NetworkShape::layer_cols(int layer) const {
  return layer == 1 ? input_dim : width;
}

std::size_t NetworkShape::layer_offset(int layer) const {
  std::size_t offset = 0;
  for (int l = 1; l < layer; ++l)
    offset += static_cast<std::size_t>(layer_rows(l)) *
              static_cast<std::size_t>(layer_cols(l));
  return offset;
}

ParamVector::ParamVector(NetworkShape s, Vector v)
    : shape(s), values(std::move(v)) {
  if (static_cast<std::size_t>(values.size()) != shape.param_count())
    throw ArgumentError("parameter vector length " +
                        std::to_string(values.size()) + " does not match p=" +
                        std::to_string(shape.param_count()));
}

ParamVector ParamVector::zeros(const NetworkShape& s) {
  return ParamVector(s, Vector::Zero(static_cast<Eigen::Index>(s.param_count())));
}

Eigen::Map<const RowMatrix> ParamVector::layer(int l) const {
  return {values.data() + shape.layer_offset(l), shape.layer_rows(l),
          shape.layer_cols(l)};
}

Eigen::Map<RowMatrix> ParamVector::layer(int l) {
  return {values.data() + shape.layer_offset(l), shape.layer_rows(l),
          shape.layer_cols(l)};
}

ParamVector init_symmetric(const NetworkShape& shape, Rng& rng) {
  shape.validate();
  const int m = shape.width;
  const int half = m / 2;
  ParamVector theta = ParamVector::zeros(shape);
  std::normal_distribution<double> hidden(0.0, std::sqrt(4.0 / m));
  std::normal_distribution<double> output(0.0, std::sqrt(2.0 / m));

  for (int l = 1; l < shape.depth; ++l) {
    auto w = theta.layer(l);
    const int half_cols = shape.layer_cols(l) / 2;
    for (int i = 0; i < half; ++i) {
      for (int j = 0; j < half_cols; ++j) {
        const double v = hidden(rng);
        w(i, j) = v;
        w(i + half, j + half_cols) = v;
      }
    }
  }
  auto out = theta.layer(shape.depth);
  for (int i = 0; i < half; ++i) {
    const double v = output(rng);
    out(0, i) = v;
    out(0, i + half) = -v;
  }
  return theta;
}

namespace {

void check_input(const ParamVector& theta, const Vector& x) {
  if (x.size() != theta.shape.input_dim)
    throw ArgumentError("context has dimension " + std::to_string(x.size()) +
                        ", network expects " +
                        std::to_string(theta.shape.input_dim));
}

}  // namespace

double forward(const ParamVector& theta, const Vector& x) {
  check_input(theta, x);
  const int depth = theta.shape.depth;
  Vector act = x;
  for (int l = 1; l < depth; ++l) act = (theta.layer(l) * act).cwiseMax(0.0);
  return std::sqrt(static_cast<double>(theta.shape.width)) *
         theta.layer(depth).row(0).dot(act);
}

double forward_backward(const ParamVector& theta, const Vector& x,
                        Vector& grad) {
  check_input(theta, x);
  const NetworkShape& shape = theta.shape;
  const int depth = shape.depth;
  const double scale = std::sqrt(static_cast<double>(shape.width));

  // acts[l] is the input to layer l+1; pre[l] the pre-activation of layer l.
  std::vector<Vector> acts(static_cast<std::size_t>(depth));
  std::vector<Vector> pre(static_cast<std::size_t>(depth));
  acts[0] = x;
  for (int l = 1; l < depth; ++l) {
    pre[l] = theta.layer(l) * acts[l - 1];
    acts[l] = pre[l].cwiseMax(0.0);
  }
  const auto out_row = theta.layer(depth).row(0);
  const double out = scale * out_row.dot(acts[depth - 1]);

  Eigen::Map<RowMatrix> g_out(grad.data() + shape.layer_offset(depth), 1,
                              shape.width);
  g_out = scale * acts[depth - 1].transpose();

  Vector delta = scale * out_row.transpose();
  for (int l = depth - 1; l >= 1; --l) {
    for (Eigen::Index i = 0; i < delta.size(); ++i)
      if (!(pre[l][i] > 0.0)) delta[i] = 0.0;
    Eigen::Map<RowMatrix> g_w(grad.data() + shape.layer_offset(l),
                              shape.layer_rows(l), shape.layer_cols(l));
    g_w.noalias() = delta * acts[l - 1].transpose();
    if (l > 1) delta = theta.layer(l).transpose() * delta;
  }
  return out;
}

ParamVector gradient(const ParamVector& theta, const Vector& x) {
  ParamVector g = ParamVector::zeros(theta.shape);
  forward_backward(theta, x, g.values);
  return g;
}

void TrainSpec::validate() const {
  if (!(lambda > 0.0)) throw ConfigError("train lambda must be > 0");
  if (!(eta > 0.0)) throw ConfigError("train eta must be > 0");
  if (steps < 0) throw ConfigError("train steps must be >= 0");
  if (const auto* mb = std::get_if<MiniBatch>(&batch); mb && mb->batch_size < 1)
    throw ConfigError("batch_size must be >= 1");
}

double training_loss(const ParamVector& theta, const ParamVector& anchor,
                     std::span<const BanditRecord> data, double lambda) {
  double loss = 0.0;
  for (const auto& rec : data) {
    const double err = forward(theta, rec.context) - rec.reward;
    loss += 0.5 * err * err;
  }
  const double m = theta.shape.width;
  return loss +
         0.5 * m * lambda * (theta.values - anchor.values).squaredNorm();
}

ParamVector train_nn(const ParamVector& start, const ParamVector& anchor,
                     std::span<const BanditRecord> data, const TrainSpec& spec,
                     Rng& rng, const Vector& mask) {
  spec.validate();
  if (start.shape != anchor.shape)
    throw ArgumentError("train_nn: start and anchor shapes differ");
  if (mask.size() != 0 && static_cast<std::size_t>(mask.size()) != start.size())
    throw ArgumentError("train_nn: mask length does not match p");
  if (data.empty() || spec.steps == 0) return start;

  const double reg = start.shape.width * spec.lambda;
  ParamVector theta = start;
  Vector grad(theta.values.size());
  Vector sample_grad(theta.values.size());
  const auto* mini = std::get_if<MiniBatch>(&spec.batch);
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);

  auto accumulate = [&](const BanditRecord& rec, double& loss) {
    const double err =
        forward_backward(theta, rec.context, sample_grad) - rec.reward;
    loss += 0.5 * err * err;
    grad.noalias() += err * sample_grad;
  };

  for (int step = 1; step <= spec.steps; ++step) {
    const Vector diff = theta.values - anchor.values;
    grad = reg * diff;
    double loss = 0.5 * reg * diff.squaredNorm();
    if (mini) {
      for (int b = 0; b < mini->batch_size; ++b) accumulate(data[pick(rng)], loss);
    } else {
      for (const auto& rec : data) accumulate(rec, loss);
    }
    if (!std::isfinite(loss)) throw DivergedTrainingError(step);
    if (mask.size() != 0) grad.array() *= mask.array();
    theta.values.noalias() -= spec.eta * grad;
  }
  if (!theta.all_finite()) throw DivergedTrainingError(spec.steps);
  return theta;
}

}  // namespace dbandit
