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

#include "shaplab/coalition.h"

#include <stdexcept>
#include <string>
#include <vector>

namespace shaplab {

Coalition::Coalition(int n_players, std::uint64_t bits)
    : n_players_(n_players), bits_(bits) {
  if (n_players < 0 || n_players > kMaxPlayers) {
    throw std::invalid_argument("coalition: n_players must be in [0, 64], got " +
                                std::to_string(n_players));
  }
  if ((bits & ~FullMask(n_players)) != 0) {
    throw std::invalid_argument("coalition: member index >= n_players (" +
                                std::to_string(n_players) + ")");
  }
}

Coalition Coalition::Full(int n_players) {
  return Coalition(n_players, FullMask(n_players));
}

Coalition Coalition::Of(int n_players, const std::vector<int>& members) {
  std::uint64_t bits = 0;
  for (int m : members) {
    if (m < 0 || m >= n_players) {
      throw std::invalid_argument("coalition: player " + std::to_string(m) +
                                  " out of range");
    }
    bits |= std::uint64_t{1} << m;
  }
  return Coalition(n_players, bits);
}

Coalition Coalition::with(int player) const {
  if (player < 0 || player >= n_players_) {
    throw std::invalid_argument("coalition: player " + std::to_string(player) +
                                " out of range");
  }
  return Coalition(n_players_, bits_ | (std::uint64_t{1} << player));
}

Coalition Coalition::without(int player) const {
  if (player < 0 || player >= n_players_) {
    throw std::invalid_argument("coalition: player " + std::to_string(player) +
                                " out of range");
  }
  return Coalition(n_players_, bits_ & ~(std::uint64_t{1} << player));
}

std::vector<int> Coalition::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

std::string Coalition::ToString() const {
  std::string out = "{";
  bool first = true;
  for (int m : members()) {
    if (!first) out += ",";
    out += std::to_string(m);
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace shaplab
