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

#ifndef SHAPLAB_ATTRIBUTION_H_
#define SHAPLAB_ATTRIBUTION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shaplab {

enum class AttributionMethod {
  kExactSubset,
  kExactPermutation,
  kSampled,
  kAsymmetric,
  kEqualSplit,
  kClosedForm,
};

std::string_view MethodName(AttributionMethod method);

// Solver metadata. Fields not relevant to the producing solver stay empty.
struct Diagnostics {
  std::optional<std::uint64_t> n_samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> admissible_permutations;
  std::optional<double> dummy_tolerance;
  std::vector<int> dummies;
  // Per-player standard error of the sampled estimate.
  std::vector<double> standard_errors;
  std::uint64_t oracle_calls = 0;
};

// Per-player values phi with base value v(empty), so that
// base_value + sum(values) reconstructs v(D) for efficient methods.
struct Attribution {
  double base_value = 0.0;
  std::vector<double> values;
  AttributionMethod method = AttributionMethod::kExactSubset;
  Diagnostics diagnostics;

  int n_players() const { return static_cast<int>(values.size()); }
  double Total() const;
};

}  // namespace shaplab

#endif  // SHAPLAB_ATTRIBUTION_H_
