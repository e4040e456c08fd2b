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

#ifndef DBANDIT_ERRORS_HPP_
#define DBANDIT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dbandit {

// Invalid configuration value (odd width, lambda <= 0, delta outside (0,1)...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shape or dimension mismatch between arguments.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Reveal bookkeeping was driven out of order or with unknown rounds.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Zero-norm context where a direction is required.
class DegenerateContextError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A matrix that should be PSD is not, or a factorization failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed dataset file. `location` is a byte offset for binary formats and
// a 1-based line number for text formats.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t location)
      : std::runtime_error(what), location_(location) {}
  std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

// Filesystem failure while writing results; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergedTrainingError : public std::runtime_error {
 public:
  explicit DivergedTrainingError(int step)
      : std::runtime_error("training diverged: non-finite loss at step " +
                           std::to_string(step)),
        step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace dbandit

#endif  // DBANDIT_ERRORS_HPP_
