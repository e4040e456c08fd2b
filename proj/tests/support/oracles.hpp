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

// Reference implementations used as test oracles. Nothing here shares code
// with the library beyond the public data types.

#ifndef DBANDIT_TESTS_ORACLES_HPP_
#define DBANDIT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dbandit/network.hpp"

namespace dbandit::testing {

// Layer matrices rebuilt by walking the flat vector by hand: W_1 (m x d),
// hidden W_l (m x m), W_L (1 x m), each row-major.
inline std::vector<Eigen::MatrixXd> unflatten(const ParamVector& theta) {
  const int L = theta.shape.depth;
  const int m = theta.shape.width;
  const int d = theta.shape.input_dim;
  std::vector<Eigen::MatrixXd> ws;
  std::size_t k = 0;
  for (int l = 1; l <= L; ++l) {
    const int rows = (l == L) ? 1 : m;
    const int cols = (l == 1) ? d : m;
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) w(i, j) = theta.values[static_cast<Eigen::Index>(k++)];
    ws.push_back(std::move(w));
  }
  return ws;
}

inline double dense_forward(const ParamVector& theta, const Eigen::VectorXd& x) {
  const auto ws = unflatten(theta);
  Eigen::VectorXd h = x;
  for (std::size_t l = 0; l + 1 < ws.size(); ++l) {
    Eigen::VectorXd z = ws[l] * h;
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = z[i] > 0.0 ? z[i] : 0.0;
    h = z;
  }
  return std::sqrt(static_cast<double>(theta.shape.width)) * (ws.back() * h)(0);
}

// Smallest |pre-activation| over every hidden unit; finite differences are
// only meaningful when this is bounded away from the ReLU kink.
inline double min_abs_preactivation(const ParamVector& theta, const Eigen::VectorXd& x) {
  const auto ws = unflatten(theta);
  Eigen::VectorXd h = x;
  double smallest = INFINITY;
  for (std::size_t l = 0; l + 1 < ws.size(); ++l) {
    Eigen::VectorXd z = ws[l] * h;
    smallest = std::min(smallest, z.cwiseAbs().minCoeff());
    h = z.cwiseMax(0.0);
  }
  return smallest;
}

inline Eigen::VectorXd central_difference(const ParamVector& theta,
                                          const Eigen::VectorXd& x, double step) {
  Eigen::VectorXd g(theta.values.size());
  ParamVector probe = theta;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double keep = probe.values[i];
    probe.values[i] = keep + step;
    const double up = dense_forward(probe, x);
    probe.values[i] = keep - step;
    const double down = dense_forward(probe, x);
    probe.values[i] = keep;
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

inline ParamVector gaussian_params(const NetworkShape& shape, std::mt19937_64& rng,
                                   double sd = 1.0) {
  std::normal_distribution<double> n(0.0, sd);
  Eigen::VectorXd v(static_cast<Eigen::Index>(shape.param_count()));
  for (auto& e : v) e = n(rng);
  return ParamVector(shape, v);
}

inline Eigen::VectorXd gaussian_vector(int dim, std::mt19937_64& rng, double sd = 1.0) {
  std::normal_distribution<double> n(0.0, sd);
  Eigen::VectorXd v(dim);
  for (auto& e : v) e = n(rng);
  return v;
}

inline Eigen::VectorXd unit_vector(int dim, std::mt19937_64& rng) {
  Eigen::VectorXd v = gaussian_vector(dim, rng);
  return v / v.norm();
}

// Fresh scratch directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("dbandit_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_bytes(const std::filesystem::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void push_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace dbandit::testing

#endif  // DBANDIT_TESTS_ORACLES_HPP_
