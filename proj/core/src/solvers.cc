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

#include "shaplab/solvers.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "shaplab/errors.h"
#include "shaplab/rng.h"

namespace shaplab {
namespace {

void CheckCap(const CoalitionGame& game, int cap, const char* solver) {
  if (game.n_players() > cap) {
    throw CapacityError(std::string(solver) + ": " +
                        std::to_string(game.n_players()) +
                        " players exceeds the enumeration cap of " +
                        std::to_string(cap));
  }
}

constexpr std::uint64_t Bit(int player) { return std::uint64_t{1} << player; }

// w[s] = s! (n-s-1)! / n! = 1 / (n * C(n-1, s)).
std::vector<double> SubsetWeights(int n) {
  std::vector<double> weights(n);
  double binom = 1.0;  // C(n-1, s)
  for (int s = 0; s < n; ++s) {
    weights[s] = 1.0 / (static_cast<double>(n) * binom);
    binom = binom * static_cast<double>(n - 1 - s) / static_cast<double>(s + 1);
  }
  return weights;
}

Attribution MakeAttribution(const CoalitionGame& game, std::vector<double> phi,
                            AttributionMethod method) {
  Attribution out;
  out.base_value = game.empty_value();
  out.values = std::move(phi);
  out.method = method;
  out.diagnostics.oracle_calls = game.oracle_calls();
  return out;
}

// Walks every admissible ordering depth-first, in lexicographic order, and
// calls visit(order) for each complete one.
template <typename Visit>
void ForEachOrdering(int n, const PrecedenceOrder* order, Visit&& visit) {
  std::vector<int> prefix;
  prefix.reserve(n);
  auto recurse = [&](auto&& self, std::uint64_t placed) -> void {
    if (static_cast<int>(prefix.size()) == n) {
      visit(prefix);
      return;
    }
    for (int p = 0; p < n; ++p) {
      if (placed & Bit(p)) continue;
      if (order != nullptr && (order->ancestors(p) & ~placed) != 0) continue;
      prefix.push_back(p);
      self(self, placed | Bit(p));
      prefix.pop_back();
    }
  };
  recurse(recurse, 0);
}

}  // namespace

Attribution ExactShapleySubsets(const CoalitionGame& game) {
  CheckCap(game, kMaxSubsetPlayers, "ExactShapleySubsets");
  const int n = game.n_players();
  const std::vector<double> weights = SubsetWeights(n);
  const std::uint64_t full = Coalition::FullMask(n);

  std::vector<double> phi(n, 0.0);
  for (std::uint64_t s = 0; s < full; ++s) {
    const double v_s = game.value(s);
    const double w = weights[std::popcount(s)];
    for (std::uint64_t rest = ~s & full; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      phi[i] += w * (game.value(s | Bit(i)) - v_s);
    }
  }
  return MakeAttribution(game, std::move(phi), AttributionMethod::kExactSubset);
}

Attribution ExactShapleyPermutations(const CoalitionGame& game) {
  CheckCap(game, kMaxPermutationPlayers, "ExactShapleyPermutations");
  const int n = game.n_players();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<double> phi(n, 0.0);
  std::uint64_t count = 0;
  do {
    std::uint64_t s = 0;
    double v_s = game.value(s);
    for (int p : perm) {
      const double v_next = game.value(s | Bit(p));
      phi[p] += v_next - v_s;
      s |= Bit(p);
      v_s = v_next;
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (double& value : phi) value /= static_cast<double>(count);
  Attribution out = MakeAttribution(game, std::move(phi),
                                    AttributionMethod::kExactPermutation);
  out.diagnostics.admissible_permutations = count;
  return out;
}

Attribution SampledShapley(const CoalitionGame& game, std::uint64_t n_samples,
                           std::uint64_t seed) {
  if (n_samples == 0) {
    throw std::invalid_argument("SampledShapley: n_samples must be >= 1");
  }
  const int n = game.n_players();
  const CounterRng rng(seed);

  // Welford accumulators per player.
  std::vector<double> mean(n, 0.0);
  std::vector<double> m2(n, 0.0);
  std::vector<int> perm(n);
  for (std::uint64_t k = 0; k < n_samples; ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int j = n - 1; j > 0; --j) {
      const auto pick = static_cast<int>(rng.Index(j + 1, k, j));
      std::swap(perm[j], perm[pick]);
    }
    const double count = static_cast<double>(k + 1);
    std::uint64_t s = 0;
    double v_s = game.value(s);
    for (int p : perm) {
      const double v_next = game.value(s | Bit(p));
      const double delta = v_next - v_s;
      const double diff = delta - mean[p];
      mean[p] += diff / count;
      m2[p] += diff * (delta - mean[p]);
      s |= Bit(p);
      v_s = v_next;
    }
  }

  Attribution out =
      MakeAttribution(game, mean, AttributionMethod::kSampled);
  out.diagnostics.n_samples = n_samples;
  out.diagnostics.seed = seed;
  out.diagnostics.standard_errors.assign(n, 0.0);
  if (n_samples > 1) {
    const double ns = static_cast<double>(n_samples);
    for (int p = 0; p < n; ++p) {
      out.diagnostics.standard_errors[p] = std::sqrt(m2[p] / (ns - 1.0) / ns);
    }
  }
  return out;
}

Attribution AsymmetricShapley(const CoalitionGame& game,
                              const PrecedenceOrder& order) {
  CheckCap(game, kMaxPermutationPlayers, "AsymmetricShapley");
  const int n = game.n_players();
  if (order.n_players() != n) {
    throw std::invalid_argument("AsymmetricShapley: order has " +
                                std::to_string(order.n_players()) +
                                " players, game has " + std::to_string(n));
  }

  std::vector<double> phi(n, 0.0);
  std::uint64_t count = 0;
  ForEachOrdering(n, &order, [&](const std::vector<int>& perm) {
    std::uint64_t s = 0;
    double v_s = game.value(s);
    for (int p : perm) {
      const double v_next = game.value(s | Bit(p));
      phi[p] += v_next - v_s;
      s |= Bit(p);
      v_s = v_next;
    }
    ++count;
  });
  // An acyclic order always has a topological sort, so count >= 1.
  for (double& value : phi) value /= static_cast<double>(count);

  Attribution out =
      MakeAttribution(game, std::move(phi), AttributionMethod::kAsymmetric);
  out.diagnostics.admissible_permutations = count;
  return out;
}

bool IsDummy(const CoalitionGame& game, int player, double tolerance) {
  if (player < 0 || player >= game.n_players()) {
    throw std::invalid_argument("IsDummy: player out of range");
  }
  CheckCap(game, kMaxSubsetPlayers, "IsDummy");
  const std::uint64_t full = Coalition::FullMask(game.n_players());
  for (std::uint64_t s = 0; s <= full; ++s) {
    if (s & Bit(player)) continue;
    if (std::abs(game.value(s | Bit(player)) - game.value(s)) > tolerance) {
      return false;
    }
  }
  return true;
}

Attribution EqualSplitAttribution(const CoalitionGame& game,
                                  double dummy_tolerance) {
  CheckCap(game, kMaxSubsetPlayers, "EqualSplitAttribution");
  if (!(dummy_tolerance >= 0.0)) {
    throw std::invalid_argument(
        "EqualSplitAttribution: dummy_tolerance must be >= 0");
  }
  const int n = game.n_players();
  const double base = game.empty_value();

  std::vector<double> psi(n, 0.0);
  std::vector<int> dummies;
  double dummy_total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (IsDummy(game, i, dummy_tolerance)) {
      dummies.push_back(i);
      psi[i] = game.value(Bit(i)) - base;
      dummy_total += psi[i];
    }
  }

  const double remainder = game.grand_value() - base - dummy_total;
  const int active = n - static_cast<int>(dummies.size());
  if (active == 0) {
    if (std::abs(remainder) > dummy_tolerance) {
      throw InconsistentGameError(
          "EqualSplitAttribution: every player is a dummy but v(D) - v(empty) "
          "leaves " + std::to_string(remainder) + " unallocated");
    }
  } else {
    const double share = remainder / static_cast<double>(active);
    std::size_t next_dummy = 0;
    for (int i = 0; i < n; ++i) {
      if (next_dummy < dummies.size() && dummies[next_dummy] == i) {
        ++next_dummy;
        continue;
      }
      psi[i] = share;
    }
  }

  Attribution out =
      MakeAttribution(game, std::move(psi), AttributionMethod::kEqualSplit);
  out.diagnostics.dummy_tolerance = dummy_tolerance;
  out.diagnostics.dummies = std::move(dummies);
  return out;
}

}  // namespace shaplab
