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

#include "shaplab/models.h"

#include <stdexcept>
#include <string>
#include <utility>

namespace shaplab {
namespace {

void CheckArity(int arity, std::span<const double> x, const char* who) {
  if (static_cast<int>(x.size()) != arity) {
    throw std::invalid_argument(std::string(who) + ": expected " +
                                std::to_string(arity) + " values, got " +
                                std::to_string(x.size()));
  }
}

}  // namespace

LinearModel::LinearModel(double intercept, std::vector<double> coefficients)
    : intercept_(intercept), coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw std::invalid_argument("LinearModel: needs at least one coefficient");
  }
}

double LinearModel::Score(std::span<const double> x) const {
  CheckArity(arity(), x, "LinearModel");
  double out = intercept_;
  for (std::size_t j = 0; j < coefficients_.size(); ++j) {
    out += coefficients_[j] * x[j];
  }
  return out;
}

MultiplicativeModel::MultiplicativeModel(int arity) : arity_(arity) {
  if (arity < 1) throw std::invalid_argument("MultiplicativeModel: arity < 1");
}

double MultiplicativeModel::Score(std::span<const double> x) const {
  CheckArity(arity_, x, "MultiplicativeModel");
  double out = 1.0;
  for (double v : x) out *= v;
  return out;
}

double QuadraticRecourseModel::Score(std::span<const double> x) const {
  CheckArity(1, x, "QuadraticRecourseModel");
  const double shifted = x[0] - 1.0;
  return 2.0 - shifted * shifted;
}

ScaffoldedModel::ScaffoldedModel(ModelPtr biased, ModelPtr innocuous,
                                 TabularDataset membership)
    : biased_(std::move(biased)),
      innocuous_(std::move(innocuous)),
      membership_(std::move(membership)) {
  if (!biased_ || !innocuous_) {
    throw std::invalid_argument("ScaffoldedModel: null model");
  }
  if (biased_->arity() != innocuous_->arity()) {
    throw std::invalid_argument("ScaffoldedModel: biased arity " +
                                std::to_string(biased_->arity()) +
                                " != innocuous arity " +
                                std::to_string(innocuous_->arity()));
  }
  if (biased_->arity() != membership_.n_features()) {
    throw std::invalid_argument(
        "ScaffoldedModel: model arity does not match dataset width");
  }
}

double ScaffoldedModel::Score(std::span<const double> x) const {
  return InDistribution(x) ? biased_->Score(x) : innocuous_->Score(x);
}

std::shared_ptr<const ScaffoldedModel> Scaffold(ModelPtr biased,
                                                ModelPtr innocuous,
                                                const TabularDataset& data) {
  return std::make_shared<ScaffoldedModel>(std::move(biased),
                                           std::move(innocuous), data);
}

Attribution LinearClosedForm(const LinearModel& model,
                             std::span<const double> x,
                             std::span<const double> means) {
  CheckArity(model.arity(), x, "LinearClosedForm(x)");
  CheckArity(model.arity(), means, "LinearClosedForm(means)");
  Attribution out;
  out.method = AttributionMethod::kClosedForm;
  out.base_value = model.Score(means);
  out.values.resize(model.arity());
  for (int i = 0; i < model.arity(); ++i) {
    out.values[i] = model.coefficients()[i] * (x[i] - means[i]);
  }
  return out;
}

Attribution MultiplicativeClosedForm(const MultiplicativeModel& model,
                                     std::span<const double> x) {
  const double fx = model.Score(x);
  Attribution out;
  out.method = AttributionMethod::kClosedForm;
  out.base_value = 0.0;
  out.values.assign(model.arity(), fx / static_cast<double>(model.arity()));
  return out;
}

}  // namespace shaplab
