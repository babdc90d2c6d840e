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

#ifndef SHAPLAB_MODEL_H_
#define SHAPLAB_MODEL_H_

#include <functional>
#include <memory>
#include <span>
#include <utility>

namespace shaplab {

// The function being explained. Score must be deterministic and defined on
// every point of R^d, including points no training row resembles.
// Implementations are immutable and safe to call concurrently.
class PredictiveModel {
 public:
  virtual ~PredictiveModel() = default;

  virtual int arity() const = 0;
  virtual double Score(std::span<const double> x) const = 0;
};

using ModelPtr = std::shared_ptr<const PredictiveModel>;

// Adapts a callable into a model.
class FunctionModel final : public PredictiveModel {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  FunctionModel(int arity, Fn fn) : arity_(arity), fn_(std::move(fn)) {}

  int arity() const override { return arity_; }
  double Score(std::span<const double> x) const override { return fn_(x); }

 private:
  int arity_;
  Fn fn_;
};

inline ModelPtr MakeFunctionModel(int arity, FunctionModel::Fn fn) {
  return std::make_shared<FunctionModel>(arity, std::move(fn));
}

}  // namespace shaplab

#endif  // SHAPLAB_MODEL_H_
