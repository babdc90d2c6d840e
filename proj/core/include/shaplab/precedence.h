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

#ifndef SHAPLAB_PRECEDENCE_H_
#define SHAPLAB_PRECEDENCE_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace shaplab {

// Causal precedence constraints between players: each edge (a, b) requires
// a to appear before b in every admissible permutation.
class PrecedenceOrder {
 public:
  using Edge = std::pair<int, int>;

  // Throws std::invalid_argument on out-of-range or self edges and
  // CyclicOrderError if the relation has a cycle.
  PrecedenceOrder(int n_players, std::vector<Edge> edges);

  static PrecedenceOrder Unconstrained(int n_players) {
    return PrecedenceOrder(n_players, {});
  }

  // Parses "a->b,c->d". Whitespace around tokens is ignored.
  static PrecedenceOrder Parse(int n_players, const std::string& text);

  int n_players() const { return n_players_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Bit pattern of players that must precede `player` (direct and
  // transitive).
  std::uint64_t ancestors(int player) const { return ancestors_[player]; }

  bool Admits(std::span<const int> permutation) const;

 private:
  int n_players_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> ancestors_;
};

}  // namespace shaplab

#endif  // SHAPLAB_PRECEDENCE_H_
