// Copyright 2026 The Shaplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHAPLAB_ERRORS_H_
#define SHAPLAB_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shaplab {

// Precondition violations (bad index, dimension mismatch, i in S, ...) are
// reported as std::invalid_argument. The types below cover failures that
// callers are expected to distinguish.

// A solver was asked to enumerate a game above its player cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Data or model files could not be read or parsed.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Base for failures that occur while evaluating a game.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No dataset row matches x on the conditioning coalition.
class EmptyConditioningError : public ComputationError {
 public:
  EmptyConditioningError(const std::string& what, std::uint64_t coalition_bits)
      : ComputationError(what), coalition_bits_(coalition_bits) {}

  std::uint64_t coalition_bits() const { return coalition_bits_; }

 private:
  std::uint64_t coalition_bits_;
};

// Exact-match conditioning was requested on a continuous feature.
class ContinuousFeatureError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// The precedence relation contains a cycle.
class CyclicOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Every player is a dummy yet v(D) != v(empty).
class InconsistentGameError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace shaplab

#endif  // SHAPLAB_ERRORS_H_
