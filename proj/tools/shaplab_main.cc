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

// shaplab: explain a model on a CSV dataset, audit the attribution against
// the Shapley axioms, or run the bundled pathology scenarios.
//
//   shaplab explain --dataset data/independent.csv --model linear --instance 3
//   shaplab audit --dataset data/independent.csv --solver equal-split
//       --pair-model multiplicative
//   shaplab scenario all --seed 7 --out reports
//
// Exit codes: 0 ok, 2 bad configuration, 3 data or model load failure,
// 4 computation failure, 5 failed scenario claim or axiom gap.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "run_config.h"
#include "shaplab/attribution.h"
#include "shaplab/axioms.h"
#include "shaplab/errors.h"
#include "shaplab/game.h"
#include "shaplab/scenarios.h"
#include "shaplab/solvers.h"
#include "shaplab/value_functions.h"

namespace shaplab::cli {
namespace {

using Json = nlohmann::ordered_json;

// Tolerance for audits of data-driven games.
constexpr double kAuditTolerance = 1e-6;

struct Loaded {
  RunConfig config;
  TabularDataset data;
  std::vector<double> x;
  ModelPtr model;
  CoalitionGame game;
  ValueFunctionSpec spec;
};

// Everything that is neither a config nor a computation problem while
// loading maps to exit 3.
Loaded Load(const RunConfig& config) {
  TabularDataset data = TabularDataset::LoadCsv(config.dataset);
  std::vector<double> x = ResolveInstance(config.instance, data);
  ModelPtr model;
  try {
    model = LoadModel(config.model, data.n_features());
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  ValueFunctionSpec spec;
  spec.kind = config.value_fn;
  if (config.reference) spec.reference = ParseValues(*config.reference, "reference");
  if (spec.reference && static_cast<int>(spec.reference->size()) != data.n_features()) {
    throw ConfigError("reference has " + std::to_string(spec.reference->size()) +
                      " values, dataset has " + std::to_string(data.n_features()));
  }
  if (config.vf_samples) spec.n_samples = *config.vf_samples;
  if (config.seed) spec.seed = *config.seed;
  CoalitionGame game = BuildGame(model, data, x, spec);
  return {config, std::move(data), std::move(x), std::move(model), std::move(game),
          std::move(spec)};
}

Solver MakeSolver(const RunConfig& config, const TabularDataset& data) {
  switch (config.solver) {
    case SolverKind::kExact:
      return [](const CoalitionGame& g) { return ExactShapleySubsets(g); };
    case SolverKind::kSampled: {
      const std::uint64_t n = *config.n_samples;
      const std::uint64_t seed = *config.seed;
      return [n, seed](const CoalitionGame& g) { return SampledShapley(g, n, seed); };
    }
    case SolverKind::kAsymmetric: {
      const PrecedenceOrder order = ResolveEdges(*config.edges, data);
      return [order](const CoalitionGame& g) { return AsymmetricShapley(g, order); };
    }
    case SolverKind::kEqualSplit:
      return [](const CoalitionGame& g) { return EqualSplitAttribution(g); };
  }
  throw ConfigError("unknown solver");
}

Json DiagnosticsJson(const Diagnostics& d) {
  Json j = Json::object();
  if (d.n_samples) j["n_samples"] = *d.n_samples;
  if (d.seed) j["seed"] = *d.seed;
  if (d.admissible_permutations) {
    j["admissible_permutations"] = *d.admissible_permutations;
  }
  if (d.dummy_tolerance) j["dummy_tolerance"] = *d.dummy_tolerance;
  if (!d.dummies.empty()) j["dummies"] = d.dummies;
  if (!d.standard_errors.empty()) j["standard_errors"] = d.standard_errors;
  j["oracle_calls"] = d.oracle_calls;
  return j;
}

Json ConfigJson(const RunConfig& config) {
  Json j = Json::object();
  for (const auto& [key, value] : config.echo) j[key] = value;
  return j;
}

std::string WriteJson(const RunConfig& config, const std::string& name,
                      const Json& j) {
  std::filesystem::create_directories(config.out);
  const std::string path = (std::filesystem::path(config.out) / name).string();
  WriteFileAtomically(path, j.dump(2) + "\n");
  return path;
}

int Explain(const RunConfig& config) {
  const Loaded run = Load(config);
  const Attribution a = MakeSolver(config, run.data)(run.game);
  Json j;
  j["base_value"] = a.base_value;
  j["values"] = Json::array();
  for (int i = 0; i < a.n_players(); ++i) {
    j["values"].push_back(
        {{"feature", run.data.feature_names()[i]}, {"phi", a.values[i]}});
  }
  // The question answered: why f(x) rather than the base value?
  j["contrast"] = {{"fx", run.game.grand_value()}, {"base", a.base_value}};
  j["method"] = MethodName(a.method);
  j["value_function"] = ValueFunctionKindName(run.spec.kind);
  j["diagnostics"] = DiagnosticsJson(a.diagnostics);
  j["config"] = ConfigJson(config);
  const std::string path = WriteJson(config, "explain.json", j);
  std::cout << j.dump(2) << "\n";
  std::cerr << "wrote " << path << "\n";
  return kExitOk;
}

int Audit(const RunConfig& config) {
  const Loaded run = Load(config);
  const Solver solver = MakeSolver(config, run.data);
  const Attribution a = solver(run.game);

  std::optional<AdditivityInput> other;
  if (config.pair_model) {
    RunConfig pair = config;
    pair.model = *config.pair_model;
    const Loaded second = Load(pair);
    other = AdditivityInput{second.game, solver(second.game), solver};
  }
  const AxiomReport report = AuditAxioms(run.game, a, other, kAuditTolerance);

  // A sampled estimate is unbiased, not exact: its gaps are reported but do
  // not fail the audit.
  const bool exempt = a.method == AttributionMethod::kSampled;
  bool passed = report.efficiency_gap <= report.tolerance &&
                report.symmetry_violations.empty() &&
                report.dummy_violations.empty() &&
                (!report.additivity_gap || *report.additivity_gap <= report.tolerance);
  if (exempt) passed = true;

  Json j;
  j["method"] = MethodName(a.method);
  j["value_function"] = ValueFunctionKindName(run.spec.kind);
  j["tolerance"] = report.tolerance;
  j["efficiency_gap"] = report.efficiency_gap;
  Json sym_violations = Json::array();
  for (const auto& v : report.symmetry_violations) {
    sym_violations.push_back({{"first", run.data.feature_names()[v.first]},
                              {"second", run.data.feature_names()[v.second]},
                              {"gap", v.gap}});
  }
  j["symmetry"] = {{"symmetric_pairs", report.symmetric_pairs},
                   {"max_gap", report.max_symmetry_gap},
                   {"violations", sym_violations}};
  Json dummy_violations = Json::array();
  for (const auto& v : report.dummy_violations) {
    dummy_violations.push_back(
        {{"feature", run.data.feature_names()[v.player]}, {"magnitude", v.magnitude}});
  }
  j["dummy"] = {{"dummy_players", report.dummy_players},
                {"max_gap", report.max_dummy_gap},
                {"violations", dummy_violations}};
  j["additivity_gap"] =
      report.additivity_gap ? Json(*report.additivity_gap) : Json(nullptr);
  j["exempt"] = exempt ? Json::array({"efficiency", "symmetry", "dummy", "additivity"})
                       : Json::array();
  j["passed"] = passed;
  j["attribution"] = {{"base_value", a.base_value}, {"values", a.values}};
  j["config"] = ConfigJson(config);
  const std::string path = WriteJson(config, "audit.json", j);
  std::cout << j.dump(2) << "\n";
  std::cerr << "wrote " << path << "\n";
  if (!passed) {
    std::cerr << "axiom gap above tolerance " << report.tolerance << "\n";
    return kExitFailedCheck;
  }
  return kExitOk;
}

int Scenario(const std::string& name, std::optional<std::uint64_t> seed,
             const std::string& out) {
  std::vector<std::string> names;
  if (name == "all") {
    names = ScenarioNames();
  } else {
    const auto& known = ScenarioNames();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      std::cerr << "error: unknown scenario '" << name << "'; expected one of all";
      for (const auto& k : known) std::cerr << ", " << k;
      std::cerr << "\n";
      return kExitConfig;
    }
    names = {name};
  }
  const std::uint64_t s = seed.value_or(kDefaultScenarioSeed);
  bool all_passed = true;
  std::filesystem::create_directories(out);
  for (const std::string& n : names) {
    const ScenarioReport report = RunScenario(n, s);
    Json j = Json::parse(ReportToJson(report));
    j["config"] = {{"command", "scenario"}, {"name", name}, {"seed", s}};
    for (const Artifact& a : report.artifacts) {
      WriteFileAtomically((std::filesystem::path(out) / a.path).string(), a.content);
    }
    WriteFileAtomically((std::filesystem::path(out) / (report.id + ".json")).string(),
                        j.dump(2) + "\n");
    int n_pass = 0;
    for (const Claim& c : report.claims) {
      if (c.pass) {
        ++n_pass;
        continue;
      }
      std::cerr << "FAILED " << report.id << ": " << c.description
                << " (expected " << c.expected << ", observed " << c.observed
                << ", tolerance " << c.tolerance << ", "
                << RelationName(c.relation) << ")\n";
    }
    std::cout << (report.passed() ? "PASS " : "FAIL ") << report.id << " "
              << n_pass << "/" << report.claims.size() << " claims\n";
    all_passed = all_passed && report.passed();
  }
  return all_passed ? kExitOk : kExitFailedCheck;
}

// Adds the shared run flags to a subcommand. Values land in `flags` only
// when given, so config-file values survive unless overridden.
void AddRunFlags(CLI::App* app, std::map<std::string, std::string>& flags,
                 std::string& config_path) {
  static const std::map<std::string, std::string> kHelp = {
      {"dataset", "CSV file; a <file>.schema sidecar sets feature kinds"},
      {"model", "linear, linear:b0,b1,..., multiplicative, recourse or a tree file"},
      {"pair-model", "Second model for the additivity check (audit)"},
      {"instance", "Row index or comma-separated feature values"},
      {"value-fn",
       "conditional, marginal-joint, product-of-marginals or single-reference"},
      {"reference", "Comma-separated reference row (single-reference)"},
      {"solver", "exact, sampled, asymmetric or equal-split"},
      {"edges", "Precedence edges 'a->b,c->d' (asymmetric)"},
      {"n-samples", "Permutations for the sampled solver"},
      {"vf-samples", "Hybrid samples per coalition for the value function"},
      {"seed", "Seed; required whenever anything is sampled"},
      {"out", "Output directory"}};
  app->add_option("--config", config_path, "Flat key = value config file");
  for (const std::string& key : ConfigKeys()) {
    app->add_option_function<std::string>(
        "--" + key, [&flags, key](const std::string& v) { flags[key] = v; },
        kHelp.at(key));
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Shapley value attribution laboratory"};
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::string config_path;
  CLI::App* explain = app.add_subcommand("explain", "Attribute one prediction");
  CLI::App* audit = app.add_subcommand("audit", "Check an attribution's axioms");
  AddRunFlags(explain, flags, config_path);
  AddRunFlags(audit, flags, config_path);

  CLI::App* scenario = app.add_subcommand("scenario", "Run pathology scenarios");
  std::string scenario_name;
  std::optional<std::uint64_t> scenario_seed;
  std::string scenario_out = "shaplab-out";
  scenario->add_option("name", scenario_name, "Scenario name or 'all'")->required();
  scenario->add_option("--seed", scenario_seed, "Seed for sampled scenarios");
  scenario->add_option("--out", scenario_out, "Report directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (scenario->parsed()) return Scenario(scenario_name, scenario_seed, scenario_out);

    std::map<std::string, std::string> merged;
    if (!config_path.empty()) merged = LoadConfigFile(config_path);
    for (const auto& [key, value] : flags) merged[key] = value;
    const RunConfig config = BuildRunConfig(merged);
    return explain->parsed() ? Explain(config) : Audit(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "load error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const EmptyConditioningError& e) {
    std::cerr << "computation error: " << e.what() << "\n"
              << "coalition bits: " << e.coalition_bits() << "\n";
    return kExitCompute;
  } catch (const ComputationError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kExitCompute;
  } catch (const CapacityError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kExitCompute;
  } catch (const CyclicOrderError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kExitCompute;
  }
}

}  // namespace
}  // namespace shaplab::cli

int main(int argc, char** argv) { return shaplab::cli::Main(argc, argv); }
