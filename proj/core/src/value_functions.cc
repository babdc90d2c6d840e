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

#include "shaplab/value_functions.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "shaplab/errors.h"
#include "shaplab/rng.h"
#include "shaplab/solvers.h"

namespace shaplab {
namespace {

// Stream tags for the counter-based generator.
constexpr std::uint64_t kJointStream = 0x4a4f494e54ULL;     // "JOINT"
constexpr std::uint64_t kProductStream = 0x50524f44ULL;     // "PROD"

void CheckInputs(const PredictiveModel* model, const TabularDataset& data,
                 std::span<const double> x) {
  if (model == nullptr) throw std::invalid_argument("value function: null model");
  if (model->arity() != data.n_features()) {
    throw std::invalid_argument(
        "value function: model arity " + std::to_string(model->arity()) +
        " does not match dataset with " + std::to_string(data.n_features()) +
        " features");
  }
  if (static_cast<int>(x.size()) != data.n_features()) {
    throw std::invalid_argument("value function: instance has " +
                                std::to_string(x.size()) + " values, expected " +
                                std::to_string(data.n_features()));
  }
}

bool IsSampledKind(ValueFunctionKind kind) {
  return kind == ValueFunctionKind::kMarginalJoint ||
         kind == ValueFunctionKind::kProductOfMarginals;
}

// Deterministic description of the hybrids for one coalition. Hybrid k is a
// pure function of (spec.seed, k), independent of the coalition.
class HybridPlan {
 public:
  HybridPlan(const TabularDataset& data, std::span<const double> x,
             const Coalition& s, const ValueFunctionSpec& spec)
      : data_(data), x_(x), s_(s), spec_(spec), rng_(spec.seed) {
    if (s.is_full() || spec.kind == ValueFunctionKind::kSingleReference) {
      count_ = 1;
    } else if (spec.kind == ValueFunctionKind::kMarginalJoint &&
               spec.n_samples >= data.n_rows()) {
      full_pass_ = true;
      count_ = data.n_rows();
    } else {
      count_ = spec.n_samples;
    }
  }

  std::uint64_t count() const { return count_; }

  // Row supplying feature j of hybrid k.
  std::size_t RowFor(std::uint64_t k, int j) const {
    if (full_pass_) return static_cast<std::size_t>(k);
    if (spec_.kind == ValueFunctionKind::kMarginalJoint) {
      return static_cast<std::size_t>(rng_.Index(data_.n_rows(), kJointStream, k));
    }
    return static_cast<std::size_t>(rng_.Index(
        data_.n_rows(), kProductStream, k, static_cast<std::uint64_t>(j)));
  }

  void Fill(std::uint64_t k, std::vector<double>& out) const {
    out.assign(x_.begin(), x_.end());
    if (s_.is_full()) return;
    const int d = data_.n_features();
    if (spec_.kind == ValueFunctionKind::kSingleReference) {
      for (int j = 0; j < d; ++j) {
        if (!s_.contains(j)) out[j] = (*spec_.reference)[j];
      }
      return;
    }
    if (spec_.kind == ValueFunctionKind::kMarginalJoint) {
      const auto row = data_.row(RowFor(k, 0));
      for (int j = 0; j < d; ++j) {
        if (!s_.contains(j)) out[j] = row[j];
      }
      return;
    }
    for (int j = 0; j < d; ++j) {
      if (!s_.contains(j)) out[j] = data_.at(RowFor(k, j), j);
    }
  }

  HybridProvenance Provenance(std::uint64_t k) const {
    HybridProvenance p;
    if (s_.is_full()) return p;
    switch (spec_.kind) {
      case ValueFunctionKind::kSingleReference:
        p.source = HybridProvenance::Source::kReference;
        break;
      case ValueFunctionKind::kMarginalJoint:
        p.source = HybridProvenance::Source::kDatasetRow;
        p.row = RowFor(k, 0);
        break;
      case ValueFunctionKind::kProductOfMarginals:
        p.source = HybridProvenance::Source::kPerFeatureRows;
        p.feature_rows.assign(data_.n_features(), -1);
        for (int j = 0; j < data_.n_features(); ++j) {
          if (!s_.contains(j)) {
            p.feature_rows[j] = static_cast<std::int64_t>(RowFor(k, j));
          }
        }
        break;
      case ValueFunctionKind::kConditionalEmpirical:
        break;
    }
    return p;
  }

 private:
  const TabularDataset& data_;
  std::span<const double> x_;
  Coalition s_;
  const ValueFunctionSpec& spec_;
  CounterRng rng_;
  bool full_pass_ = false;
  std::uint64_t count_ = 0;
};

}  // namespace

std::string_view ValueFunctionKindName(ValueFunctionKind kind) {
  switch (kind) {
    case ValueFunctionKind::kConditionalEmpirical:
      return "conditional";
    case ValueFunctionKind::kMarginalJoint:
      return "marginal-joint";
    case ValueFunctionKind::kProductOfMarginals:
      return "product-of-marginals";
    case ValueFunctionKind::kSingleReference:
      return "single-reference";
  }
  return "unknown";
}

ValueFunctionKind ParseValueFunctionKind(std::string_view name) {
  for (auto kind : {ValueFunctionKind::kConditionalEmpirical,
                    ValueFunctionKind::kMarginalJoint,
                    ValueFunctionKind::kProductOfMarginals,
                    ValueFunctionKind::kSingleReference}) {
    if (ValueFunctionKindName(kind) == name) return kind;
  }
  throw std::invalid_argument(
      "unknown value function '" + std::string(name) +
      "' (expected conditional, marginal-joint, product-of-marginals or "
      "single-reference)");
}

void ValueFunctionSpec::Validate() const {
  if (kind == ValueFunctionKind::kSingleReference && !reference) {
    throw std::invalid_argument("single-reference value function needs a "
                                "reference row");
  }
  if (kind != ValueFunctionKind::kSingleReference && reference) {
    throw std::invalid_argument(std::string(ValueFunctionKindName(kind)) +
                                " value function does not take a reference "
                                "row");
  }
  if (IsSampledKind(kind) && n_samples == 0) {
    throw std::invalid_argument("n_samples must be >= 1");
  }
  if (kind == ValueFunctionKind::kProductOfMarginals && n_samples == kFullPass) {
    throw std::invalid_argument(
        "product-of-marginals has no full-pass mode; set n_samples");
  }
}

CoalitionGame BuildConditionalGame(ModelPtr model, const TabularDataset& data,
                                   std::vector<double> x) {
  CheckInputs(model.get(), data, x);
  for (int j = 0; j < data.n_features(); ++j) {
    if (data.kind(j) == DomainKind::kContinuous) {
      throw ContinuousFeatureError(
          "conditional value function needs discrete features, but '" +
          data.feature_names()[j] +
          "' is continuous; discretize it, declare it discrete in the schema, "
          "or use an interventional value function");
    }
  }

  // A matching row agrees with x on S, so the hybrid (x_S, row_Sbar) is the
  // row itself and its score does not depend on S.
  auto row_scores = std::make_shared<std::vector<double>>();
  row_scores->reserve(data.n_rows());
  for (std::size_t r = 0; r < data.n_rows(); ++r) {
    row_scores->push_back(model->Score(data.row(r)));
  }
  const double fx = model->Score(x);

  return CoalitionGame(
      data.n_features(),
      [data, x = std::move(x), row_scores, fx](const Coalition& s) {
        if (s.is_full()) return fx;
        const std::vector<int> members = s.members();
        double sum = 0.0;
        std::size_t matches = 0;
        for (std::size_t r = 0; r < data.n_rows(); ++r) {
          const auto row = data.row(r);
          const bool match = std::all_of(
              members.begin(), members.end(),
              [&](int j) { return row[j] == x[j]; });
          if (match) {
            sum += (*row_scores)[r];
            ++matches;
          }
        }
        if (matches == 0) {
          throw EmptyConditioningError(
              "no dataset row matches the instance on coalition " +
                  data.Describe(s) + " " + s.ToString(),
              s.bits());
        }
        return sum / static_cast<double>(matches);
      });
}

CoalitionGame BuildInterventionalGame(ModelPtr model, const TabularDataset& data,
                                      std::vector<double> x,
                                      const ValueFunctionSpec& spec) {
  CheckInputs(model.get(), data, x);
  if (spec.kind == ValueFunctionKind::kConditionalEmpirical) {
    throw std::invalid_argument(
        "BuildInterventionalGame: use BuildConditionalGame for the conditional "
        "value function");
  }
  spec.Validate();
  if (spec.reference &&
      static_cast<int>(spec.reference->size()) != data.n_features()) {
    throw std::invalid_argument("reference row has wrong length");
  }
  const double fx = model->Score(x);
  return CoalitionGame(
      data.n_features(),
      [model, data, x = std::move(x), spec, fx](const Coalition& s) {
        if (s.is_full()) return fx;
        const HybridPlan plan(data, x, s, spec);
        // Running mean rather than sum / count: averaging copies of one
        // score must return that score bitwise, or a feature the model
        // ignores picks up rounding noise against v(D) = f(x).
        std::vector<double> scratch;
        double mean = 0.0;
        for (std::uint64_t k = 0; k < plan.count(); ++k) {
          plan.Fill(k, scratch);
          mean += (model->Score(scratch) - mean) / static_cast<double>(k + 1);
        }
        return mean;
      });
}

CoalitionGame BuildGame(ModelPtr model, const TabularDataset& data,
                        std::vector<double> x, const ValueFunctionSpec& spec) {
  if (spec.kind == ValueFunctionKind::kConditionalEmpirical) {
    spec.Validate();
    return BuildConditionalGame(std::move(model), data, std::move(x));
  }
  return BuildInterventionalGame(std::move(model), data, std::move(x), spec);
}

std::vector<HybridSample> GenerateHybrids(const TabularDataset& data,
                                          std::span<const double> x,
                                          const Coalition& s,
                                          const ValueFunctionSpec& spec) {
  if (spec.kind == ValueFunctionKind::kConditionalEmpirical) {
    throw std::invalid_argument(
        "GenerateHybrids: the conditional value function does not build "
        "hybrids");
  }
  spec.Validate();
  if (static_cast<int>(x.size()) != data.n_features() ||
      s.n_players() != data.n_features()) {
    throw std::invalid_argument("GenerateHybrids: dimension mismatch");
  }
  const HybridPlan plan(data, x, s, spec);
  std::vector<HybridSample> out;
  out.reserve(plan.count());
  for (std::uint64_t k = 0; k < plan.count(); ++k) {
    HybridSample h{{}, s, plan.Provenance(k)};
    plan.Fill(k, h.values);
    out.push_back(std::move(h));
  }
  return out;
}

OodCriterion OodCriterion::RowMembership() {
  return {[](const TabularDataset& data, std::span<const double> v) {
    return data.ContainsRow(v);
  }};
}

OodCriterion OodCriterion::Constraint(
    std::function<bool(std::span<const double>)> satisfied) {
  return {[satisfied = std::move(satisfied)](const TabularDataset&,
                                             std::span<const double> v) {
    return satisfied(v);
  }};
}

double OodFraction(const TabularDataset& data,
                   std::span<const HybridSample> hybrids,
                   const OodCriterion& criterion) {
  if (hybrids.empty()) {
    throw std::invalid_argument("OodFraction: empty hybrid list");
  }
  std::size_t outside = 0;
  for (const auto& h : hybrids) {
    if (!criterion.in_distribution(data, h.values)) ++outside;
  }
  return static_cast<double>(outside) / static_cast<double>(hybrids.size());
}

IndirectInfluence IndirectInfluenceGap(ModelPtr model, const TabularDataset& data,
                                       std::vector<double> x, int feature,
                                       const ValueFunctionSpec& interventional) {
  CheckInputs(model.get(), data, x);
  if (feature < 0 || feature >= data.n_features()) {
    throw std::invalid_argument("IndirectInfluenceGap: feature out of range");
  }

  std::set<double> grid = {x[feature]};
  for (std::size_t r = 0; r < data.n_rows(); ++r) grid.insert(data.at(r, feature));
  auto check = [&](std::span<const double> base) {
    std::vector<double> probe(base.begin(), base.end());
    const double reference = model->Score(probe);
    for (double value : grid) {
      probe[feature] = value;
      if (model->Score(probe) != reference) {
        throw std::invalid_argument(
            "IndirectInfluenceGap: feature '" + data.feature_names()[feature] +
            "' has an interventional effect on the model");
      }
    }
  };
  check(x);
  for (std::size_t r = 0; r < data.n_rows(); ++r) check(data.row(r));

  IndirectInfluence out;
  out.conditional_phi =
      ExactShapleySubsets(BuildConditionalGame(model, data, x)).values[feature];
  out.interventional_phi =
      ExactShapleySubsets(BuildInterventionalGame(model, data, x, interventional))
          .values[feature];
  return out;
}

}  // namespace shaplab
