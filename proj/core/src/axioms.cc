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

#include "shaplab/axioms.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "shaplab/errors.h"
#include "shaplab/solvers.h"

namespace shaplab {
namespace {

constexpr std::uint64_t Bit(int player) { return std::uint64_t{1} << player; }

void CheckDimensions(const CoalitionGame& game, const Attribution& attr,
                     const char* what) {
  if (attr.n_players() != game.n_players()) {
    throw std::invalid_argument(std::string("AuditAxioms: ") + what + " has " +
                                std::to_string(attr.n_players()) +
                                " values, game has " +
                                std::to_string(game.n_players()) + " players");
  }
}

bool SameProfile(const CoalitionGame& game, int i, int j, double tolerance) {
  const std::uint64_t full = Coalition::FullMask(game.n_players());
  const std::uint64_t both = Bit(i) | Bit(j);
  for (std::uint64_t s = 0; s <= full; ++s) {
    if (s & both) continue;
    const double di = game.value(s | Bit(i)) - game.value(s);
    const double dj = game.value(s | Bit(j)) - game.value(s);
    if (std::abs(di - dj) > tolerance) return false;
  }
  return true;
}

}  // namespace

Solver SolverLike(const Attribution& attribution) {
  switch (attribution.method) {
    case AttributionMethod::kExactSubset:
      return [](const CoalitionGame& g) { return ExactShapleySubsets(g); };
    case AttributionMethod::kExactPermutation:
      return [](const CoalitionGame& g) { return ExactShapleyPermutations(g); };
    case AttributionMethod::kSampled: {
      const auto& d = attribution.diagnostics;
      if (!d.n_samples || !d.seed) {
        throw std::invalid_argument(
            "SolverLike: sampled attribution lacks n_samples/seed");
      }
      const std::uint64_t n = *d.n_samples;
      const std::uint64_t seed = *d.seed;
      return [n, seed](const CoalitionGame& g) {
        return SampledShapley(g, n, seed);
      };
    }
    case AttributionMethod::kEqualSplit: {
      const double tol =
          attribution.diagnostics.dummy_tolerance.value_or(kDefaultDummyTolerance);
      return [tol](const CoalitionGame& g) {
        return EqualSplitAttribution(g, tol);
      };
    }
    case AttributionMethod::kAsymmetric:
      throw std::invalid_argument(
          "SolverLike: asymmetric attributions need an explicit solver that "
          "carries the precedence order");
    case AttributionMethod::kClosedForm:
      break;
  }
  throw std::invalid_argument("SolverLike: closed-form attributions have no "
                              "game solver");
}

AxiomReport AuditAxioms(const CoalitionGame& game,
                        const Attribution& attribution,
                        const std::optional<AdditivityInput>& other,
                        double tolerance) {
  CheckDimensions(game, attribution, "attribution");
  if (game.n_players() > kMaxSubsetPlayers) {
    throw CapacityError("AuditAxioms: exhaustive checks need at most " +
                        std::to_string(kMaxSubsetPlayers) + " players");
  }
  const int n = game.n_players();
  const auto& phi = attribution.values;

  AxiomReport report;
  report.tolerance = tolerance;
  report.efficiency_gap = std::abs(attribution.Total() - game.grand_value());

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!SameProfile(game, i, j, tolerance)) continue;
      ++report.symmetric_pairs;
      const double gap = std::abs(phi[i] - phi[j]);
      report.max_symmetry_gap = std::max(report.max_symmetry_gap, gap);
      if (gap > tolerance) report.symmetry_violations.push_back({i, j, gap});
    }
  }

  for (int i = 0; i < n; ++i) {
    if (!IsDummy(game, i, tolerance)) continue;
    ++report.dummy_players;
    const double magnitude = std::abs(phi[i]);
    report.max_dummy_gap = std::max(report.max_dummy_gap, magnitude);
    if (magnitude > tolerance) report.dummy_violations.push_back({i, magnitude});
  }

  if (other) {
    if (other->game.n_players() != n) {
      throw std::invalid_argument("AuditAxioms: additivity game has " +
                                  std::to_string(other->game.n_players()) +
                                  " players, expected " + std::to_string(n));
    }
    CheckDimensions(other->game, other->attribution, "additivity attribution");
    const Solver solver =
        other->solver ? other->solver : SolverLike(attribution);
    const Attribution sum =
        solver(CoalitionGame::Sum(game, other->game));
    double gap = 0.0;
    for (int i = 0; i < n; ++i) {
      gap = std::max(gap, std::abs(phi[i] + other->attribution.values[i] -
                                   sum.values[i]));
    }
    report.additivity_gap = gap;
  }
  return report;
}

}  // namespace shaplab
