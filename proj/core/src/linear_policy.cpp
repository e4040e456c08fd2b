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
#include <string>
#include <utility>

#include "dbandit/errors.hpp"
#include "dbandit/policy.hpp"

namespace dbandit {

LinearPolicy::LinearPolicy(PolicyConfig cfg, std::size_t dim, std::uint64_t seed)
    : cfg_(std::move(cfg)),
      design_(dim, cfg_.lambda, cfg_.design_mode),
      b_(Vector::Zero(static_cast<Eigen::Index>(dim))),
      explore_rng_(make_rng(seed, Stream::kPolicy)) {
  if (!(cfg_.lambda > 0.0)) throw ConfigError("lambda must be > 0");
}

double LinearPolicy::gamma() const {
  return cfg_.exploration == Exploration::kUcb ? cfg_.lin_alpha : cfg_.nu;
}

Selection LinearPolicy::select(std::span<const Vector> contexts) {
  if (contexts.empty()) throw ArgumentError("select needs at least one arm");
  const Vector theta_hat = design_.solve(b_);
  Vector sampled;
  if (cfg_.exploration == Exploration::kThompson) {
    std::normal_distribution<double> standard(0.0, 1.0);
    Vector z(theta_hat.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = standard(explore_rng_);
    sampled = theta_hat + cfg_.nu * design_.inverse_sqrt_apply(z);
  }

  Selection sel;
  for (const auto& x : contexts) {
    if (x.size() != theta_hat.size())
      throw ArgumentError("context dimension " + std::to_string(x.size()) +
                          " does not match linear model dimension " +
                          std::to_string(theta_hat.size()));
    const double mean = x.dot(theta_hat);
    const double width = std::sqrt(design_.quad_form(x));
    sel.means.push_back(mean);
    sel.widths.push_back(width);
    sel.scores.push_back(cfg_.exploration == Exploration::kUcb
                             ? mean + cfg_.lin_alpha * width
                             : x.dot(sampled));
  }
  sel.arm = argmax_lowest(sel.scores);
  ++round_;
  ledger_.record_selection(round_, contexts[sel.arm - 1], sel.arm);
  return sel;
}

void LinearPolicy::ingest(std::span<const BanditRecord> batch) {
  for (const auto& rec : validated_batch(batch)) {
    const BanditRecord& revealed = ledger_.reveal(rec.round, rec.reward);
    design_.rank1_update(revealed.context);
    b_ += revealed.reward * revealed.context;
  }
}

}  // namespace dbandit
