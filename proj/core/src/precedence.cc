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

#include "shaplab/precedence.h"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shaplab/coalition.h"
#include "shaplab/errors.h"

namespace shaplab {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int ParsePlayer(std::string_view token) {
  token = Trim(token);
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::invalid_argument("precedence: bad player index '" +
                                std::string(token) + "'");
  }
  return value;
}

}  // namespace

PrecedenceOrder::PrecedenceOrder(int n_players, std::vector<Edge> edges)
    : n_players_(n_players), edges_(std::move(edges)) {
  if (n_players < 1 || n_players > kMaxPlayers) {
    throw std::invalid_argument("precedence: n_players must be in [1, 64]");
  }
  std::vector<std::uint64_t> parents(n_players, 0);
  for (const auto& [from, to] : edges_) {
    if (from < 0 || from >= n_players || to < 0 || to >= n_players) {
      throw std::invalid_argument("precedence: edge " + std::to_string(from) +
                                  "->" + std::to_string(to) +
                                  " out of range");
    }
    if (from == to) {
      throw CyclicOrderError("precedence: self edge on player " +
                             std::to_string(from));
    }
    parents[to] |= std::uint64_t{1} << from;
  }

  // Kahn's algorithm; ancestors accumulate in topological order.
  ancestors_.assign(n_players, 0);
  std::vector<int> indegree(n_players, 0);
  for (int p = 0; p < n_players; ++p) {
    indegree[p] = Coalition(n_players, parents[p]).size();
  }
  std::vector<int> ready;
  for (int p = 0; p < n_players; ++p) {
    if (indegree[p] == 0) ready.push_back(p);
  }
  int visited = 0;
  while (!ready.empty()) {
    const int p = ready.back();
    ready.pop_back();
    ++visited;
    for (int child = 0; child < n_players; ++child) {
      if ((parents[child] >> p) & 1U) {
        ancestors_[child] |= ancestors_[p] | (std::uint64_t{1} << p);
        if (--indegree[child] == 0) ready.push_back(child);
      }
    }
  }
  if (visited != n_players) {
    throw CyclicOrderError("precedence: edge relation contains a cycle");
  }
}

PrecedenceOrder PrecedenceOrder::Parse(int n_players, const std::string& text) {
  std::vector<Edge> edges;
  std::string_view rest = Trim(text);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    std::string_view item = Trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view()
                                           : rest.substr(comma + 1);
    if (item.empty()) continue;
    const std::size_t arrow = item.find("->");
    if (arrow == std::string_view::npos) {
      throw std::invalid_argument("precedence: expected 'a->b', got '" +
                                  std::string(item) + "'");
    }
    edges.emplace_back(ParsePlayer(item.substr(0, arrow)),
                       ParsePlayer(item.substr(arrow + 2)));
  }
  return PrecedenceOrder(n_players, std::move(edges));
}

bool PrecedenceOrder::Admits(std::span<const int> permutation) const {
  std::uint64_t placed = 0;
  for (int p : permutation) {
    if ((ancestors_[p] & ~placed) != 0) return false;
    placed |= std::uint64_t{1} << p;
  }
  return true;
}

}  // namespace shaplab
