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

#ifndef SHAPLAB_MODELS_H_
#define SHAPLAB_MODELS_H_

#include <memory>
#include <span>
#include <vector>

#include "shaplab/attribution.h"
#include "shaplab/dataset.h"
#include "shaplab/model.h"

namespace shaplab {

// f(x) = intercept + sum_j coefficients[j] * x[j].
class LinearModel final : public PredictiveModel {
 public:
  LinearModel(double intercept, std::vector<double> coefficients);

  int arity() const override { return static_cast<int>(coefficients_.size()); }
  double Score(std::span<const double> x) const override;

  double intercept() const { return intercept_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  double intercept_;
  std::vector<double> coefficients_;
};

// f(x) = x[0] * x[1] * ... * x[d-1].
class MultiplicativeModel final : public PredictiveModel {
 public:
  explicit MultiplicativeModel(int arity);

  int arity() const override { return arity_; }
  double Score(std::span<const double> x) const override;

 private:
  int arity_;
};

// Univariate f(x) = 2 - (x - 1)^2. Its maximum sits at x = 1, so pushing x
// beyond 1 lowers the score.
class QuadraticRecourseModel final : public PredictiveModel {
 public:
  int arity() const override { return 1; }
  double Score(std::span<const double> x) const override;
};

// Behaves like `biased` on points that are rows of `membership` and like
// `innocuous` everywhere else. Interventional explainers evaluate mostly
// off-dataset hybrids, so they see the innocuous model.
class ScaffoldedModel final : public PredictiveModel {
 public:
  // Throws std::invalid_argument if the arities differ from each other or
  // from the dataset width.
  ScaffoldedModel(ModelPtr biased, ModelPtr innocuous, TabularDataset membership);

  int arity() const override { return biased_->arity(); }
  double Score(std::span<const double> x) const override;

  bool InDistribution(std::span<const double> x) const {
    return membership_.ContainsRow(x);
  }

 private:
  ModelPtr biased_;
  ModelPtr innocuous_;
  TabularDataset membership_;
};

std::shared_ptr<const ScaffoldedModel> Scaffold(ModelPtr biased,
                                                ModelPtr innocuous,
                                                const TabularDataset& data);

// Shapley values of a linear model under independent features:
// phi_i = beta_i * (x_i - means_i), base = f(means).
// Throws std::invalid_argument on dimension mismatch.
Attribution LinearClosedForm(const LinearModel& model,
                             std::span<const double> x,
                             std::span<const double> means);

// For a product of independent zero-mean features every v(S) with S != D is
// zero, so each feature receives f(x) / d whatever its own value. base = 0.
Attribution MultiplicativeClosedForm(const MultiplicativeModel& model,
                                     std::span<const double> x);

}  // namespace shaplab

#endif  // SHAPLAB_MODELS_H_
