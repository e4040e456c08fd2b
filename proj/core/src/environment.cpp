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

#include "dbandit/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "dbandit/errors.hpp"

namespace dbandit {

void EnvironmentSpec::validate() const {
  if (arms < 1) throw ConfigError("environment needs at least one arm");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
    throw ConfigError("noise sigma must be finite and >= 0");
  dbandit::validate(delay);
  if (const auto* ds = std::get_if<DatasetSource>(&source)) {
    if (!ds->samples || ds->samples->empty())
      throw ConfigError("dataset source has no samples");
    if (arms < 2) throw ConfigError("dataset source needs K >= 2");
    for (const auto& s : *ds->samples)
      if (s.label < 0 || s.label >= arms)
        throw ConfigError("dataset label " + std::to_string(s.label) +
                          " outside [0, K-1]");
  } else {
    const auto& syn = std::get<SyntheticSource>(source);
    if (syn.dim < 1) throw ConfigError("synthetic dimension must be >= 1");
  }
}

Environment::Environment(EnvironmentSpec spec, EnvironmentSeeds seeds)
    : spec_(std::move(spec)),
      context_rng_(make_rng(seeds.context, Stream::kContext)),
      noise_rng_(make_rng(seeds.noise, Stream::kNoise)),
      delay_rng_(make_rng(seeds.delay, Stream::kDelay)) {
  spec_.validate();
  int raw_dim = 0;
  if (const auto* ds = std::get_if<DatasetSource>(&spec_.source)) {
    raw_dim = static_cast<int>(ds->samples->front().features.size()) * spec_.arms;
    order_.resize(ds->samples->size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    cursor_ = order_.size();  // forces a shuffle on the first round
  } else {
    const auto& syn = std::get<SyntheticSource>(spec_.source);
    raw_dim = syn.dim;
    Rng fn_rng = make_rng(syn.function_seed, Stream::kSynthetic);
    h_ = synthetic_h(syn.kind, random_unit_vector(syn.dim, fn_rng));
  }
  context_dim_ = spec_.mirror_contexts ? 2 * raw_dim : raw_dim;
}

void Environment::next_dataset_round() {
  const auto& ds = std::get<DatasetSource>(spec_.source);
  if (cursor_ >= order_.size()) {
    std::shuffle(order_.begin(), order_.end(), context_rng_);
    cursor_ = 0;
  }
  const LabeledSample& sample = (*ds.samples)[order_[cursor_++]];
  contexts_ = disjoint_transform(sample.features, spec_.arms);
  means_.assign(static_cast<std::size_t>(spec_.arms), ds.wrong_reward);
  means_[static_cast<std::size_t>(sample.label)] = ds.correct_reward;
}

void Environment::next_synthetic_round() {
  const auto& syn = std::get<SyntheticSource>(spec_.source);
  contexts_.clear();
  means_.clear();
  for (int a = 0; a < spec_.arms; ++a) {
    contexts_.push_back(random_unit_vector(syn.dim, context_rng_));
    means_.push_back(h_(contexts_.back()));
  }
}

const ContextSet& Environment::observe(int t) {
  if (t != current_round_ + 1)
    throw ProtocolError("environment rounds must be observed in order");
  current_round_ = t;
  if (std::holds_alternative<DatasetSource>(spec_.source)) {
    next_dataset_round();
  } else {
    next_synthetic_round();
  }
  if (spec_.mirror_contexts)
    for (auto& x : contexts_) x = mirror_embed(x);
  return contexts_;
}

StepOutcome Environment::step(int t, int action) {
  if (t != current_round_) throw ProtocolError("step called for an unobserved round");
  if (action < 1 || action > spec_.arms)
    throw ArgumentError("action " + std::to_string(action) + " outside [1, K]");
  std::normal_distribution<double> standard(0.0, 1.0);
  StepOutcome out;
  const auto best = std::max_element(means_.begin(), means_.end());
  out.best_arm = static_cast<int>(best - means_.begin()) + 1;
  out.mean_reward = means_[static_cast<std::size_t>(action - 1)];
  out.regret = *best - out.mean_reward;
  out.reward = out.mean_reward + spec_.noise_sigma * standard(noise_rng_);
  out.delay = sample_delay(spec_.delay, delay_rng_);
  return out;
}

}  // namespace dbandit
