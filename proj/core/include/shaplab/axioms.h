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

#ifndef SHAPLAB_AXIOMS_H_
#define SHAPLAB_AXIOMS_H_

#include <functional>
#include <optional>
#include <vector>

#include "shaplab/attribution.h"
#include "shaplab/game.h"

namespace shaplab {

struct SymmetryViolation {
  int first = 0;
  int second = 0;
  double gap = 0.0;  // |phi_first - phi_second|
};

struct DummyViolation {
  int player = 0;
  double magnitude = 0.0;  // |phi_player|
};

struct AxiomReport {
  double tolerance = 0.0;
  double efficiency_gap = 0.0;

  // Pairs with identical marginal-contribution profiles (within tolerance)
  // whose values differ by more than tolerance, and the largest gap over all
  // such pairs whether or not it exceeds tolerance.
  std::vector<SymmetryViolation> symmetry_violations;
  int symmetric_pairs = 0;
  double max_symmetry_gap = 0.0;

  // Exhaustively verified dummies whose value exceeds tolerance.
  std::vector<DummyViolation> dummy_violations;
  int dummy_players = 0;
  double max_dummy_gap = 0.0;

  // max_i |phi_v(i) + phi_w(i) - phi_{v+w}(i)|, present only when a second
  // game was supplied.
  std::optional<double> additivity_gap;
};

// Recomputes an attribution on another game with the same method.
using Solver = std::function<Attribution(const CoalitionGame&)>;

// Returns a solver that repeats the method recorded in `attribution` with
// the same parameters (sample count, seed, dummy tolerance). Throws
// std::invalid_argument for methods that need external input (asymmetric
// needs its precedence order; closed forms are not game solvers).
Solver SolverLike(const Attribution& attribution);

struct AdditivityInput {
  CoalitionGame game;
  Attribution attribution;
  // Solver for the sum game; defaults to SolverLike(attribution) of the
  // primary attribution when empty.
  Solver solver;
};

// Checks efficiency, symmetry, dummy and (optionally) additivity of an
// attribution against its game. Symmetric pairs and dummies are identified
// exhaustively over all coalitions, so the game must be within the subset
// enumeration cap. `tolerance` is used both to compare marginal
// contributions and to flag violations.
AxiomReport AuditAxioms(const CoalitionGame& game,
                        const Attribution& attribution,
                        const std::optional<AdditivityInput>& other = {},
                        double tolerance = 1e-9);

}  // namespace shaplab

#endif  // SHAPLAB_AXIOMS_H_
