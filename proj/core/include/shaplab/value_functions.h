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

#ifndef SHAPLAB_VALUE_FUNCTIONS_H_
#define SHAPLAB_VALUE_FUNCTIONS_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shaplab/coalition.h"
#include "shaplab/dataset.h"
#include "shaplab/game.h"
#include "shaplab/model.h"

namespace shaplab {

// How v(S) treats the features outside S.
//
//   kConditionalEmpirical  E[f(X) | X_S = x_S] over dataset rows that match
//                          x exactly on S (discrete features only).
//   kMarginalJoint         E[f(x_S, X_Sbar)] with X_Sbar taken jointly from
//                          whole background rows.
//   kProductOfMarginals    as above, but each Sbar feature drawn
//                          independently from its own empirical marginal.
//   kSingleReference       f(x_S, r_Sbar) for one fixed reference row r.
//
// The last three break the dependence between S and Sbar and are called
// interventional throughout.
enum class ValueFunctionKind {
  kConditionalEmpirical,
  kMarginalJoint,
  kProductOfMarginals,
  kSingleReference,
};

std::string_view ValueFunctionKindName(ValueFunctionKind kind);
// Accepts the names above: "conditional", "marginal-joint",
// "product-of-marginals", "single-reference". Throws std::invalid_argument.
ValueFunctionKind ParseValueFunctionKind(std::string_view name);

// Passing this as n_samples requests full-pass averaging.
inline constexpr std::uint64_t kFullPass =
    std::numeric_limits<std::uint64_t>::max();

struct ValueFunctionSpec {
  ValueFunctionKind kind = ValueFunctionKind::kMarginalJoint;
  std::optional<std::vector<double>> reference;
  // Hybrids per coalition. For kMarginalJoint, n_samples >= n_rows switches
  // to a deterministic pass over every row. Ignored by kSingleReference.
  std::uint64_t n_samples = kFullPass;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when a reference is missing for
  // kSingleReference, present for any other kind, n_samples is 0 for a
  // sampled kind, or kProductOfMarginals is left at kFullPass.
  void Validate() const;
};

// Where a hybrid's replaced coordinates came from.
struct HybridProvenance {
  enum class Source {
    kInstance,        // nothing replaced (S = D)
    kDatasetRow,      // all of Sbar from dataset row `row`
    kPerFeatureRows,  // Sbar feature j from row feature_rows[j]
    kReference,       // Sbar from the reference row
  };
  Source source = Source::kInstance;
  std::size_t row = 0;
  // Indexed by feature; -1 for kept features. Only for kPerFeatureRows.
  std::vector<std::int64_t> feature_rows;
};

struct HybridSample {
  std::vector<double> values;
  Coalition kept;
  HybridProvenance provenance;
};

// Conditional game with exact-match conditioning. v(D) = f(x) and
// v(empty) is the mean prediction over all rows.
//
// Throws ContinuousFeatureError if any feature is continuous and
// std::invalid_argument on arity mismatches. Evaluating a coalition whose
// values x_S occur in no row throws EmptyConditioningError naming the
// coalition; there is no fallback to marginal sampling.
CoalitionGame BuildConditionalGame(ModelPtr model, const TabularDataset& data,
                                   std::vector<double> x);

// Interventional game: v(S) is the mean score over GenerateHybrids(S), and
// v(D) = f(x) for every kind.
//
// Sampling draws come from a counter-based generator keyed by
// (seed, sample index, feature) and not by the coalition, so S and S+{i}
// see the same replacement rows. A feature the model ignores therefore has
// marginal contributions of exactly zero under sampling too.
CoalitionGame BuildInterventionalGame(ModelPtr model, const TabularDataset& data,
                                      std::vector<double> x,
                                      const ValueFunctionSpec& spec);

// Game for any kind, dispatching to the two builders above.
CoalitionGame BuildGame(ModelPtr model, const TabularDataset& data,
                        std::vector<double> x, const ValueFunctionSpec& spec);

// The evaluation set BuildInterventionalGame averages for coalition s.
std::vector<HybridSample> GenerateHybrids(const TabularDataset& data,
                                          std::span<const double> x,
                                          const Coalition& s,
                                          const ValueFunctionSpec& spec);

// Membership test used by OodFraction. A hybrid is out of distribution when
// the test returns false.
struct OodCriterion {
  // Exact row membership in the dataset.
  static OodCriterion RowMembership();
  // A constraint that in-distribution points satisfy.
  static OodCriterion Constraint(
      std::function<bool(std::span<const double>)> satisfied);

  std::function<bool(const TabularDataset&, std::span<const double>)> in_distribution;
};

// Fraction of hybrids the criterion marks out of distribution. Throws
// std::invalid_argument on an empty list.
double OodFraction(const TabularDataset& data,
                   std::span<const HybridSample> hybrids,
                   const OodCriterion& criterion);

struct IndirectInfluence {
  double conditional_phi = 0.0;
  double interventional_phi = 0.0;
};

// Shapley value of `feature` under the conditional game and under an
// interventional game (full-pass marginal-joint unless given). First checks
// that the feature has no interventional effect: changing it to any value in
// its column never changes f at x or at any dataset row. Throws
// std::invalid_argument if it does.
IndirectInfluence IndirectInfluenceGap(
    ModelPtr model, const TabularDataset& data, std::vector<double> x,
    int feature, const ValueFunctionSpec& interventional = {});

}  // namespace shaplab

#endif  // SHAPLAB_VALUE_FUNCTIONS_H_
