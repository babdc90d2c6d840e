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

#ifndef SHAPLAB_GAME_H_
#define SHAPLAB_GAME_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "shaplab/coalition.h"

namespace shaplab {

// A coalitional game over n players with a memoized characteristic function.
//
// The oracle must be deterministic. Each coalition's value is computed at
// most a handful of times (concurrent first reads may race and recompute,
// but all readers observe one complete value) and then served from the
// cache. Copies share the cache.
//
// Solvers work on the centered game w(S) = v(S) - v(empty) and report
// v(empty) separately as the attribution's base value.
class CoalitionGame {
 public:
  using Oracle = std::function<double(const Coalition&)>;

  // Throws std::invalid_argument if n_players is outside [1, 64] or the
  // oracle is empty.
  CoalitionGame(int n_players, Oracle oracle);

  // Builds a game from 2^N values indexed by coalition bit pattern.
  static CoalitionGame FromTable(std::vector<double> values);

  // Pointwise sum v + w of two games over the same players.
  static CoalitionGame Sum(const CoalitionGame& v, const CoalitionGame& w);

  int n_players() const { return n_players_; }

  // Throws std::invalid_argument if s has a different player count, and
  // ComputationError if the oracle returns a non-finite value.
  double value(const Coalition& s) const;
  double value(std::uint64_t bits) const;

  double empty_value() const { return value(std::uint64_t{0}); }
  double grand_value() const { return value(Coalition::FullMask(n_players_)); }

  // Number of times the underlying oracle has been invoked.
  std::uint64_t oracle_calls() const;
  std::size_t cache_size() const;

 private:
  struct Cache;

  int n_players_;
  Oracle oracle_;
  std::shared_ptr<Cache> cache_;
};

// v(S u {i}) - v(S). Throws std::invalid_argument if i is out of range or
// already in S.
double MarginalContribution(const CoalitionGame& game, int player,
                            const Coalition& s);

}  // namespace shaplab

#endif  // SHAPLAB_GAME_H_
