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

#ifndef SHAPLAB_SOLVERS_H_
#define SHAPLAB_SOLVERS_H_

#include <cstdint>

#include "shaplab/attribution.h"
#include "shaplab/game.h"
#include "shaplab/precedence.h"

namespace shaplab {

// Enumeration caps. Above these the solvers throw CapacityError.
inline constexpr int kMaxSubsetPlayers = 25;
inline constexpr int kMaxPermutationPlayers = 10;

inline constexpr double kDefaultDummyTolerance = 1e-9;

// Shapley value via the weighted sum over subsets:
//   phi(i) = sum_{S not containing i} |S|! (N-|S|-1)! / N! * (v(S+i) - v(S)).
// Touches each coalition value once, so the oracle runs at most 2^N times.
Attribution ExactShapleySubsets(const CoalitionGame& game);

// Shapley value as the average marginal contribution over all N!
// orderings. Used as an independent cross-check of ExactShapleySubsets.
Attribution ExactShapleyPermutations(const CoalitionGame& game);

// Monte Carlo average over n_samples uniformly drawn orderings. Permutation
// k is a pure function of (seed, k), so results are reproducible and do not
// depend on evaluation order. Each sampled ordering distributes exactly
// v(D) - v(empty), so the estimate is efficient even for n_samples = 1.
// Standard errors are zero when n_samples = 1.
Attribution SampledShapley(const CoalitionGame& game, std::uint64_t n_samples,
                           std::uint64_t seed);

// Asymmetric quasivalue: the uniform average of marginal contributions over
// the orderings that place every ancestor before its descendants. The
// admissible count is recorded in the diagnostics.
Attribution AsymmetricShapley(const CoalitionGame& game,
                              const PrecedenceOrder& order);

// Symmetric, dummy-respecting alternative to the Shapley value that gives up
// additivity. Players whose marginal contributions never exceed
// dummy_tolerance in magnitude receive v({i}) - v(empty); the rest split what
// remains of v(D) - v(empty) equally.
Attribution EqualSplitAttribution(
    const CoalitionGame& game, double dummy_tolerance = kDefaultDummyTolerance);

// True iff |v(S+i) - v(S)| <= tolerance for every S not containing i.
bool IsDummy(const CoalitionGame& game, int player, double tolerance);

}  // namespace shaplab

#endif  // SHAPLAB_SOLVERS_H_
