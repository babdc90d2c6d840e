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

#ifndef SHAPLAB_TOOLS_RUN_CONFIG_H_
#define SHAPLAB_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shaplab/dataset.h"
#include "shaplab/model.h"
#include "shaplab/precedence.h"
#include "shaplab/value_functions.h"

namespace shaplab::cli {

// Process exit codes. Stable.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitLoad = 3;
inline constexpr int kExitCompute = 4;
inline constexpr int kExitFailedCheck = 5;

// Malformed or contradictory configuration (exit 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Keys accepted in config files; each matches a --flag of the same name.
const std::vector<std::string>& ConfigKeys();

// Flat "key = value" text; '#' starts a comment. Later lines win.
// Throws ConfigError on unknown keys or lines without '='.
std::map<std::string, std::string> ParseConfigText(const std::string& text);
std::map<std::string, std::string> LoadConfigFile(const std::string& path);

enum class SolverKind { kExact, kSampled, kAsymmetric, kEqualSplit };

SolverKind ParseSolverKind(const std::string& name);
std::string SolverKindName(SolverKind kind);

// A fully validated run description. Built from the merged key/value map
// before anything is loaded or computed.
struct RunConfig {
  std::string dataset;
  std::string model = "linear";
  std::optional<std::string> pair_model;
  std::string instance = "0";
  ValueFunctionKind value_fn = ValueFunctionKind::kMarginalJoint;
  std::optional<std::string> reference;
  SolverKind solver = SolverKind::kExact;
  std::optional<std::string> edges;
  std::optional<std::uint64_t> n_samples;   // solver permutations
  std::optional<std::uint64_t> vf_samples;  // hybrids per coalition
  std::optional<std::uint64_t> seed;
  std::string out = "shaplab-out";

  // The merged map, echoed into reports (without "out").
  std::map<std::string, std::string> echo;
};

// Validates cross-field rules: a dataset is required, asymmetric needs
// edges and nothing else takes them, single-reference needs a reference,
// product-of-marginals needs vf-samples, any randomness needs a seed.
// Throws ConfigError.
RunConfig BuildRunConfig(const std::map<std::string, std::string>& values);

// Model specs:
//   linear                 intercept 0, coefficients 1, 2, ..., d
//   linear:b0,b1,...,bd    explicit intercept and coefficients
//   multiplicative         product of all d features
//   recourse               2 - (x - 1)^2, needs d = 1
//   anything else          path to a tree file
// Throws ConfigError for a malformed builtin, DataError for a tree file that
// cannot be read, and std::invalid_argument on arity mismatch.
ModelPtr LoadModel(const std::string& spec, int arity);

// Row index (an integer without commas) or comma-separated values.
// Throws ConfigError.
std::vector<double> ResolveInstance(const std::string& text,
                                    const TabularDataset& data);

std::vector<double> ParseValues(const std::string& text, const char* what);

// "a->b,c->d" with feature names or indices. Throws ConfigError.
PrecedenceOrder ResolveEdges(const std::string& text, const TabularDataset& data);

}  // namespace shaplab::cli

#endif  // SHAPLAB_TOOLS_RUN_CONFIG_H_
