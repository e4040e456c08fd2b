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

#include "dbandit/delay.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "dbandit/errors.hpp"

namespace dbandit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Uniform on (0, 1], safe for log and negative powers.
double open_unit(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return 1.0 - unit(rng);
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void validate(const DelayDistribution& dist) {
  std::visit(
      Overloaded{
          [](const NoDelay&) {},
          [](const ConstantDelay& d) {
            if (!(d.value >= 0.0) || !std::isfinite(d.value))
              throw ConfigError("constant delay must be finite and >= 0");
          },
          [](const UniformDelay& d) {
            if (!(d.bound > 0.0) || !std::isfinite(d.bound))
              throw ConfigError("uniform delay bound B must be > 0");
          },
          [](const ExponentialDelay& d) {
            if (!(d.rate > 0.0) || !std::isfinite(d.rate))
              throw ConfigError("exponential delay rate must be > 0");
          },
          [](const ParetoDelay& d) {
            if (!(d.shape > 1.0) || !std::isfinite(d.shape))
              throw ConfigError("pareto shape a must be > 1 (finite mean)");
            if (!(d.scale > 0.0) || !std::isfinite(d.scale))
              throw ConfigError("pareto scale x_m must be > 0");
          },
      },
      dist);
}

double sample_delay(const DelayDistribution& dist, Rng& rng) {
  return std::visit(
      Overloaded{
          [](const NoDelay&) { return 0.0; },
          [](const ConstantDelay& d) { return d.value; },
          [&](const UniformDelay& d) {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            return d.bound * unit(rng);
          },
          [&](const ExponentialDelay& d) { return -std::log(open_unit(rng)) / d.rate; },
          [&](const ParetoDelay& d) {
            const double x = d.scale * std::pow(open_unit(rng), -1.0 / d.shape);
            return d.lomax ? x - d.scale : x;
          },
      },
      dist);
}

double mean_delay(const DelayDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const NoDelay&) { return 0.0; },
          [](const ConstantDelay& d) { return d.value; },
          [](const UniformDelay& d) { return d.bound / 2.0; },
          [](const ExponentialDelay& d) { return 1.0 / d.rate; },
          [](const ParetoDelay& d) {
            const double mean = d.shape * d.scale / (d.shape - 1.0);
            return d.lomax ? mean - d.scale : mean;
          },
      },
      dist);
}

DelayDistribution delay_from_expected(std::string_view kind, double mean,
                                      bool lomax) {
  if (kind == "none") return NoDelay{};
  if (!(mean > 0.0) || !std::isfinite(mean))
    throw ConfigError("expected delay must be finite and > 0 for '" +
                      std::string(kind) + "'");
  DelayDistribution dist;
  if (kind == "exponential") {
    dist = ExponentialDelay{1.0 / mean};
  } else if (kind == "uniform") {
    dist = UniformDelay{2.0 * mean};
  } else if (kind == "pareto") {
    dist = ParetoDelay{(1.0 + mean) / mean, 1.0, lomax};
  } else if (kind == "constant") {
    dist = ConstantDelay{mean};
  } else {
    throw ConfigError("unknown delay distribution '" + std::string(kind) + "'");
  }
  validate(dist);
  return dist;
}

std::string describe(const DelayDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const NoDelay&) -> std::string { return "none"; },
          [](const ConstantDelay& d) { return "constant(" + shortest(d.value) + ")"; },
          [](const UniformDelay& d) { return "uniform(0," + shortest(d.bound) + ")"; },
          [](const ExponentialDelay& d) {
            return "exponential(rate=" + shortest(d.rate) + ")";
          },
          [](const ParetoDelay& d) {
            return std::string(d.lomax ? "lomax" : "pareto") + "(a=" +
                   shortest(d.shape) + ",x_m=" + shortest(d.scale) + ")";
          },
      },
      dist);
}

long RevealQueue::reveal_round(int s, double tau) {
  if (s < 1) throw ArgumentError("round must be >= 1");
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw ArgumentError("delay must be finite and >= 0");
  const double when = std::ceil(static_cast<double>(s) + tau);
  if (when > static_cast<double>(std::numeric_limits<long>::max() / 2))
    return std::numeric_limits<long>::max() / 2;
  return static_cast<long>(when);
}

void RevealQueue::schedule(int s, double tau, BanditRecord record) {
  const long bucket = reveal_round(s, tau);
  if (bucket <= last_popped_)
    throw ProtocolError("round " + std::to_string(s) +
                        " scheduled into an already drained bucket");
  record.round = s;
  buckets_[bucket].push_back(std::move(record));
  ++pending_;
  ++inserted_;
}

std::vector<BanditRecord> RevealQueue::pop_revealed(int t) {
  if (t != last_popped_ + 1)
    throw ProtocolError("pop_revealed(" + std::to_string(t) +
                        ") out of order; expected round " +
                        std::to_string(last_popped_ + 1));
  last_popped_ = t;
  std::vector<BanditRecord> out;
  auto it = buckets_.find(t);
  if (it == buckets_.end()) return out;
  out = std::move(it->second);
  buckets_.erase(it);
  std::stable_sort(out.begin(), out.end(),
                   [](const BanditRecord& a, const BanditRecord& b) {
                     return a.round < b.round;
                   });
  pending_ -= out.size();
  popped_ += out.size();
  return out;
}

}  // namespace dbandit
