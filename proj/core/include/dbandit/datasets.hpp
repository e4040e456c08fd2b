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

#ifndef DBANDIT_DATASETS_HPP_
#define DBANDIT_DATASETS_HPP_

#include <filesystem>
#include <functional>
#include <string_view>
#include <vector>

#include "dbandit/network.hpp"
#include "dbandit/rng.hpp"

namespace dbandit {

struct LabeledSample {
  Vector features;
  int label = 0;  // 0-based class index
};

// One feature vector per arm.
using ContextSet = std::vector<Vector>;

// IDX (MNIST) containers. Images are flattened row-major and scaled by 1/255.
std::vector<Vector> load_idx_images(const std::filesystem::path& path);
std::vector<int> load_idx_labels(const std::filesystem::path& path);
std::vector<LabeledSample> load_idx(const std::filesystem::path& images,
                                    const std::filesystem::path& labels);

// UCI agaricus-lepiota: 23 single-letter fields per line, class first
// (e -> 0, p -> 1). Each attribute becomes its rank within the column's sorted
// category set divided by (categories - 1).
std::vector<LabeledSample> load_mushroom_csv(const std::filesystem::path& path);

// x^{(a)} = (0, ..., x, ..., 0): the sample in block a, zeros elsewhere.
ContextSet disjoint_transform(const Vector& x, int arms);

// (x, x) / (sqrt(2) |x|): unit norm with identical halves.
Vector mirror_embed(const Vector& x);

enum class SyntheticKind { kLinear, kQuadratic, kCosine };

SyntheticKind parse_synthetic_kind(std::string_view id);
std::string_view to_string(SyntheticKind kind);

using RewardFunction = std::function<double(const Vector&)>;

// Clipped-to-[0,1] reward functions of a^T x.
RewardFunction synthetic_h(SyntheticKind kind, Vector direction);

// Uniform direction on the unit sphere in R^dim.
Vector random_unit_vector(int dim, Rng& rng);

}  // namespace dbandit

#endif  // DBANDIT_DATASETS_HPP_
