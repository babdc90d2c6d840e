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

#include "shaplab/attribution.h"

#include <numeric>

namespace shaplab {

std::string_view MethodName(AttributionMethod method) {
  switch (method) {
    case AttributionMethod::kExactSubset:
      return "exact-subset";
    case AttributionMethod::kExactPermutation:
      return "exact-permutation";
    case AttributionMethod::kSampled:
      return "sampled";
    case AttributionMethod::kAsymmetric:
      return "asymmetric";
    case AttributionMethod::kEqualSplit:
      return "equal-split";
    case AttributionMethod::kClosedForm:
      return "closed-form";
  }
  return "unknown";
}

double Attribution::Total() const {
  return std::accumulate(values.begin(), values.end(), base_value);
}

}  // namespace shaplab
