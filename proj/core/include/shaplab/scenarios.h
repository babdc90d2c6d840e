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

// Self-contained reproductions of known Shapley attribution pathologies.
// Each returns a report of numeric claims; a scenario passes iff all of its
// claims do. Reports are pure functions of their parameters.

#ifndef SHAPLAB_SCENARIOS_H_
#define SHAPLAB_SCENARIOS_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace shaplab {

struct Claim {
  enum class Relation {
    kNear,         // |observed - expected| <= tolerance
    kAtLeast,      // observed >= expected - tolerance
    kGreaterThan,  // observed > expected
  };

  std::string description;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::kNear;
  bool pass = false;
};

std::string_view RelationName(Claim::Relation relation);

// A file produced alongside the report, path relative to the output dir.
struct Artifact {
  std::string path;
  std::string content;
};

struct ScenarioReport {
  std::string id;
  // Sorted by key so the JSON output is stable.
  std::map<std::string, double> parameters;
  std::vector<Claim> claims;
  std::vector<Artifact> artifacts;
  // Observations recorded without being asserted.
  std::vector<std::string> findings;

  bool passed() const;

  // Appends a claim and evaluates it.
  const Claim& Check(std::string description, double expected, double observed,
                     double tolerance,
                     Claim::Relation relation = Claim::Relation::kNear);
};

inline constexpr std::uint64_t kDefaultScenarioSeed = 1;

ScenarioReport RunRedundancyScenario();
ScenarioReport RunLinearScenario(std::uint64_t seed = kDefaultScenarioSeed);
ScenarioReport RunMultiplicativeScenario();
ScenarioReport RunRecourseScenario(std::uint64_t n_samples = 100000,
                                   std::uint64_t seed = kDefaultScenarioSeed);
ScenarioReport RunBeetleScenario();
ScenarioReport RunOodFigureScenario(double rho = 0.8, std::uint64_t n = 2000,
                                    std::uint64_t seed = kDefaultScenarioSeed);
ScenarioReport RunEngineeredFeatureScenario(
    std::uint64_t n = 500, std::uint64_t seed = kDefaultScenarioSeed);
ScenarioReport RunAdversarialScenario(std::uint64_t seed = kDefaultScenarioSeed);

// Names accepted by RunScenario, in run order (excluding "all").
const std::vector<std::string>& ScenarioNames();

// Throws std::invalid_argument for an unknown name.
ScenarioReport RunScenario(std::string_view name,
                           std::uint64_t seed = kDefaultScenarioSeed);

// JSON with keys id, parameters, claims, artifacts, findings, passed.
// Doubles are written in shortest round-trip form.
std::string ReportToJson(const ScenarioReport& report);

// Writes "<id>.json" and every artifact into `dir`, creating it if needed.
// Each file is written to a temporary name and renamed into place.
// Returns the paths written. Throws std::runtime_error on I/O failure.
std::vector<std::string> WriteReport(const ScenarioReport& report,
                                     const std::string& dir);

// Atomic whole-file write used by the report writer and the CLI.
void WriteFileAtomically(const std::string& path, std::string_view content);

}  // namespace shaplab

#endif  // SHAPLAB_SCENARIOS_H_
