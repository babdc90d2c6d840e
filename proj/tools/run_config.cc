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

#include "run_config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>
#include <utility>

#include "shaplab/errors.h"
#include "shaplab/models.h"
#include "shaplab/tree.h"

namespace shaplab::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> SplitOn(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + sep.size();
  }
  return out;
}

template <typename T>
std::optional<T> ParseNumber(const std::string& text) {
  std::string token = Trim(text);
  if (!token.empty() && token.front() == '+') token.erase(0, 1);
  T value{};
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    return std::nullopt;
  }
  return value;
}

std::uint64_t ParseCount(const std::map<std::string, std::string>& values,
                         const std::string& key) {
  const auto parsed = ParseNumber<std::uint64_t>(values.at(key));
  if (!parsed) {
    throw ConfigError(key + ": expected a non-negative integer, got '" +
                      values.at(key) + "'");
  }
  return *parsed;
}

int ResolveFeature(const std::string& token, const TabularDataset& data) {
  const int by_name = data.FeatureIndex(token);
  if (by_name >= 0) return by_name;
  const auto index = ParseNumber<int>(token);
  if (index && *index >= 0 && *index < data.n_features()) return *index;
  throw ConfigError("edges: unknown feature '" + token + "'");
}

}  // namespace

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> kKeys = {
      "dataset", "model",      "pair-model", "instance", "value-fn", "reference",
      "solver",  "edges",      "n-samples",  "vf-samples", "seed",   "out"};
  return kKeys;
}

std::map<std::string, std::string> ParseConfigText(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const auto& keys = ConfigKeys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
    out[key] = Trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

SolverKind ParseSolverKind(const std::string& name) {
  if (name == "exact") return SolverKind::kExact;
  if (name == "sampled") return SolverKind::kSampled;
  if (name == "asymmetric") return SolverKind::kAsymmetric;
  if (name == "equal-split") return SolverKind::kEqualSplit;
  throw ConfigError("unknown solver '" + name +
                    "' (expected exact, sampled, asymmetric or equal-split)");
}

std::string SolverKindName(SolverKind kind) {
  switch (kind) {
    case SolverKind::kExact:
      return "exact";
    case SolverKind::kSampled:
      return "sampled";
    case SolverKind::kAsymmetric:
      return "asymmetric";
    case SolverKind::kEqualSplit:
      return "equal-split";
  }
  return "unknown";
}

RunConfig BuildRunConfig(const std::map<std::string, std::string>& values) {
  RunConfig c;
  auto has = [&](const char* key) { return values.count(key) > 0; };
  if (!has("dataset") || values.at("dataset").empty()) {
    throw ConfigError("--dataset is required");
  }
  c.dataset = values.at("dataset");
  if (has("model")) c.model = values.at("model");
  if (has("pair-model")) c.pair_model = values.at("pair-model");
  if (has("instance")) c.instance = values.at("instance");
  if (has("value-fn")) {
    try {
      c.value_fn = ParseValueFunctionKind(values.at("value-fn"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (has("reference")) c.reference = values.at("reference");
  if (has("solver")) c.solver = ParseSolverKind(values.at("solver"));
  if (has("edges")) c.edges = values.at("edges");
  if (has("n-samples")) c.n_samples = ParseCount(values, "n-samples");
  if (has("vf-samples")) c.vf_samples = ParseCount(values, "vf-samples");
  if (has("seed")) c.seed = ParseCount(values, "seed");
  if (has("out")) c.out = values.at("out");

  if (c.solver == SolverKind::kAsymmetric && !c.edges) {
    throw ConfigError("--solver asymmetric requires --edges");
  }
  if (c.solver != SolverKind::kAsymmetric && c.edges) {
    throw ConfigError("--edges is only meaningful with --solver asymmetric");
  }
  if (c.solver == SolverKind::kSampled) {
    if (!c.n_samples) throw ConfigError("--solver sampled requires --n-samples");
    if (*c.n_samples == 0) throw ConfigError("--n-samples must be >= 1");
  } else if (c.n_samples) {
    throw ConfigError("--n-samples is only meaningful with --solver sampled");
  }
  const bool single_reference = c.value_fn == ValueFunctionKind::kSingleReference;
  if (single_reference != c.reference.has_value()) {
    throw ConfigError(single_reference
                          ? "--value-fn single-reference requires --reference"
                          : "--reference is only meaningful with --value-fn "
                            "single-reference");
  }
  if (c.value_fn == ValueFunctionKind::kProductOfMarginals && !c.vf_samples) {
    throw ConfigError("--value-fn product-of-marginals requires --vf-samples");
  }
  if (c.vf_samples && *c.vf_samples == 0) {
    throw ConfigError("--vf-samples must be >= 1");
  }
  if (c.vf_samples && c.value_fn != ValueFunctionKind::kMarginalJoint &&
      c.value_fn != ValueFunctionKind::kProductOfMarginals) {
    throw ConfigError("--vf-samples only applies to sampled value functions");
  }
  const bool random = c.solver == SolverKind::kSampled || c.vf_samples.has_value();
  if (random && !c.seed) {
    throw ConfigError(
        "this run samples at random and needs an explicit --seed");
  }

  c.echo = values;
  c.echo.erase("out");
  return c;
}

std::vector<double> ParseValues(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& token : SplitOn(text, ",")) {
    const auto v = ParseNumber<double>(token);
    if (!v) {
      throw ConfigError(std::string(what) + ": '" + token + "' is not a number");
    }
    out.push_back(*v);
  }
  return out;
}

ModelPtr LoadModel(const std::string& spec, int arity) {
  ModelPtr model;
  if (spec == "linear") {
    std::vector<double> beta(arity);
    for (int j = 0; j < arity; ++j) beta[j] = j + 1;
    model = std::make_shared<LinearModel>(0.0, beta);
  } else if (spec.rfind("linear:", 0) == 0) {
    std::vector<double> params = ParseValues(spec.substr(7), "linear model");
    if (params.size() < 2) {
      throw ConfigError("linear model needs an intercept and coefficients");
    }
    const double intercept = params.front();
    params.erase(params.begin());
    model = std::make_shared<LinearModel>(intercept, std::move(params));
  } else if (spec == "multiplicative") {
    model = std::make_shared<MultiplicativeModel>(arity);
  } else if (spec == "recourse") {
    model = std::make_shared<QuadraticRecourseModel>();
  } else {
    model = std::make_shared<TreeEnsemble>(TreeEnsemble::Load(spec));
  }
  if (model->arity() != arity) {
    throw std::invalid_argument("model '" + spec + "' takes " +
                                std::to_string(model->arity()) +
                                " features but the dataset has " +
                                std::to_string(arity));
  }
  return model;
}

std::vector<double> ResolveInstance(const std::string& text,
                                    const TabularDataset& data) {
  if (text.find(',') == std::string::npos) {
    if (const auto index = ParseNumber<std::size_t>(text)) {
      if (*index >= data.n_rows()) {
        throw ConfigError("instance row " + text + " is out of range (dataset has " +
                          std::to_string(data.n_rows()) + " rows)");
      }
      const auto row = data.row(*index);
      return {row.begin(), row.end()};
    }
  }
  std::vector<double> values = ParseValues(text, "instance");
  if (static_cast<int>(values.size()) != data.n_features()) {
    throw ConfigError("instance has " + std::to_string(values.size()) +
                      " values, dataset has " +
                      std::to_string(data.n_features()) + " features");
  }
  return values;
}

PrecedenceOrder ResolveEdges(const std::string& text, const TabularDataset& data) {
  std::vector<PrecedenceOrder::Edge> edges;
  for (const std::string& item : SplitOn(text, ",")) {
    if (item.empty()) continue;
    const auto ends = SplitOn(item, "->");
    if (ends.size() != 2) throw ConfigError("edges: malformed '" + item + "'");
    edges.emplace_back(ResolveFeature(ends[0], data), ResolveFeature(ends[1], data));
  }
  try {
    return PrecedenceOrder(data.n_features(), std::move(edges));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("edges: ") + e.what());
  }
}

}  // namespace shaplab::cli
