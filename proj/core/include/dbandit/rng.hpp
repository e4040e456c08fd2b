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

#ifndef DBANDIT_RNG_HPP_
#define DBANDIT_RNG_HPP_

#include <cstdint>
#include <random>

namespace dbandit {

using Rng = std::mt19937_64;

// Independent streams derived from one experiment seed. Changing one stream's
// consumption pattern never perturbs the others.
enum class Stream : std::uint32_t {
  kInit = 1,
  kPolicy = 2,
  kContext = 3,
  kNoise = 4,
  kDelay = 5,
  kTrain = 6,
  kSynthetic = 7,
};

inline Rng make_rng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x9e3779b9u};
  return Rng(seq);
}

}  // namespace dbandit

#endif  // DBANDIT_RNG_HPP_
