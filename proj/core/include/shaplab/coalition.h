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

#ifndef SHAPLAB_COALITION_H_
#define SHAPLAB_COALITION_H_

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace shaplab {

inline constexpr int kMaxPlayers = 64;

// A subset of the players {0, ..., n_players - 1}, stored as a bit pattern
// where bit i is set iff player i is a member.
class Coalition {
 public:
  // Throws std::invalid_argument if n_players is outside [0, 64] or if any
  // bit at position >= n_players is set.
  Coalition(int n_players, std::uint64_t bits);

  static Coalition Empty(int n_players) { return Coalition(n_players, 0); }
  static Coalition Full(int n_players);
  static Coalition Of(int n_players, const std::vector<int>& members);

  static constexpr std::uint64_t FullMask(int n_players) {
    return n_players >= 64 ? ~std::uint64_t{0}
                           : (std::uint64_t{1} << n_players) - 1;
  }

  int n_players() const { return n_players_; }
  std::uint64_t bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == FullMask(n_players_); }

  bool contains(int player) const {
    return player >= 0 && player < n_players_ && ((bits_ >> player) & 1U);
  }

  // Both throw std::invalid_argument on an out-of-range player.
  Coalition with(int player) const;
  Coalition without(int player) const;

  Coalition complement() const {
    return Coalition(n_players_, ~bits_ & FullMask(n_players_));
  }

  std::vector<int> members() const;

  // "{0,2}" style, used in error messages and reports.
  std::string ToString() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  int n_players_;
  std::uint64_t bits_;
};

}  // namespace shaplab

#endif  // SHAPLAB_COALITION_H_
