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

#ifndef DBANDIT_DELAY_HPP_
#define DBANDIT_DELAY_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dbandit/network.hpp"
#include "dbandit/rng.hpp"

namespace dbandit {

struct NoDelay {};
struct ConstantDelay {
  double value = 0.0;
};
struct UniformDelay {
  double bound = 1.0;  // Uniform(0, bound)
};
struct ExponentialDelay {
  double rate = 1.0;
};
// Classic Pareto on [scale, inf). With `lomax` set the draw is shifted by
// -scale so the support starts at 0 and the mean is scale / (shape - 1).
struct ParetoDelay {
  double shape = 2.0;
  double scale = 1.0;
  bool lomax = false;
};

using DelayDistribution =
    std::variant<NoDelay, ConstantDelay, UniformDelay, ExponentialDelay, ParetoDelay>;

// Throws ConfigError on parameters outside the finite-mean range.
void validate(const DelayDistribution& dist);

double sample_delay(const DelayDistribution& dist, Rng& rng);
double mean_delay(const DelayDistribution& dist);

// Distribution with the requested mean, parameterized the way delay
// ablations are usually reported:
//   exponential -> rate 1/mean, uniform -> Uniform(0, 2*mean),
//   pareto -> shape (1+mean)/mean with scale 1.
// `kind` is one of none, exponential, uniform, pareto.
DelayDistribution delay_from_expected(std::string_view kind, double mean,
                                      bool lomax = false);

// Canonical text form, e.g. "uniform(0,60)" or "exponential(rate=0.5)".
std::string describe(const DelayDistribution& dist);

// Rounds waiting for their reward, bucketed by reveal round ceil(s + tau).
class RevealQueue {
 public:
  // Bucket index for a reward produced at round s with delay tau.
  static long reveal_round(int s, double tau);

  void schedule(int s, double tau, BanditRecord record);

  // Removes and returns bucket t, ordered by ascending round. Must be called
  // once per round with t = 1, 2, 3, ...
  std::vector<BanditRecord> pop_revealed(int t);

  std::size_t pending_count() const { return pending_; }
  std::size_t inserted_count() const { return inserted_; }
  std::size_t popped_count() const { return popped_; }
  int last_popped() const { return last_popped_; }

 private:
  std::map<long, std::vector<BanditRecord>> buckets_;
  std::size_t pending_ = 0;
  std::size_t inserted_ = 0;
  std::size_t popped_ = 0;
  int last_popped_ = 0;
};

}  // namespace dbandit

#endif  // DBANDIT_DELAY_HPP_
