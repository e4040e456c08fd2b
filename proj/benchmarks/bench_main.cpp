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

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "dbandit/datasets.hpp"
#include "dbandit/design_matrix.hpp"
#include "dbandit/network.hpp"
#include "dbandit/rng.hpp"

namespace dbandit {
namespace {

// Mushroom-sized contexts after the disjoint transform and embedding.
constexpr int kInputDim = 88;

ParamVector make_theta(int width) {
  Rng rng = make_rng(1, Stream::kInit);
  return init_symmetric({2, width, kInputDim}, rng);
}

void BM_ForwardBackward(benchmark::State& state) {
  const ParamVector theta = make_theta(static_cast<int>(state.range(0)));
  Rng rng = make_rng(2, Stream::kContext);
  const Vector x = mirror_embed(random_unit_vector(kInputDim / 2, rng));
  Vector grad(theta.values.size());
  for (auto _ : state) benchmark::DoNotOptimize(forward_backward(theta, x, grad));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ForwardBackward)->Arg(64)->Arg(128);

void BM_DesignUpdate(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto mode = state.range(1) ? DesignMode::kFull : DesignMode::kDiagonal;
  DesignMatrix z(p, 1.0, mode);
  Rng rng = make_rng(3, Stream::kContext);
  const Vector u = random_unit_vector(static_cast<int>(p), rng);
  for (auto _ : state) {
    z.rank1_update(u);
    benchmark::DoNotOptimize(z.quad_form(u));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DesignUpdate)->Args({1024, 1})->Args({2880, 1})->Args({5696, 0});

void BM_TrainStep(benchmark::State& state) {
  const ParamVector theta0 = make_theta(64);
  Rng rng = make_rng(4, Stream::kContext);
  std::vector<BanditRecord> data;
  for (int i = 0; i < 500; ++i)
    data.push_back({i + 1, mirror_embed(random_unit_vector(kInputDim / 2, rng)), 1,
                    static_cast<double>(i % 2)});
  const TrainSpec spec{0.1, 1e-4, static_cast<int>(state.range(0)), MiniBatch{64}};
  Rng train = make_rng(5, Stream::kTrain);
  for (auto _ : state)
    benchmark::DoNotOptimize(train_nn(theta0, theta0, data, spec, train, Vector()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainStep)->Arg(1)->Arg(20);

}  // namespace
}  // namespace dbandit

BENCHMARK_MAIN();
