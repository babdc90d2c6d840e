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

#include "shaplab/game.h"

#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shaplab/errors.h"

namespace shaplab {
namespace {

// Games up to the exact-solver cap get a flat table indexed by bit pattern,
// allocated on first use.
constexpr int kDenseCacheMaxPlayers = 25;
constexpr std::size_t kShards = 64;

// A NaN payload no oracle can produce (non-finite values are rejected).
constexpr std::uint64_t kEmptySlot = 0x7ff8'dead'beef'0001ULL;

}  // namespace

struct CoalitionGame::Cache {
  explicit Cache(int n_players)
      : use_dense(n_players <= kDenseCacheMaxPlayers), n_players(n_players) {}

  void EnsureDense() const {
    std::call_once(dense_once, [this] {
      dense = std::vector<std::atomic<std::uint64_t>>(std::size_t{1}
                                                      << n_players);
      for (auto& slot : dense) slot.store(kEmptySlot, std::memory_order_relaxed);
    });
  }

  bool Lookup(std::uint64_t bits, double* out) const {
    if (use_dense) {
      EnsureDense();
      const std::uint64_t raw = dense[bits].load(std::memory_order_acquire);
      if (raw == kEmptySlot) return false;
      *out = std::bit_cast<double>(raw);
      return true;
    }
    const Shard& shard = shards[CounterHash(bits)];
    std::shared_lock lock(shard.mutex);
    auto it = shard.values.find(bits);
    if (it == shard.values.end()) return false;
    *out = it->second;
    return true;
  }

  // Returns the stored value, which is the first one inserted for the key.
  double Insert(std::uint64_t bits, double value) {
    if (use_dense) {
      EnsureDense();
      std::uint64_t expected = kEmptySlot;
      const std::uint64_t raw = std::bit_cast<std::uint64_t>(value);
      if (dense[bits].compare_exchange_strong(expected, raw,
                                              std::memory_order_acq_rel)) {
        size.fetch_add(1, std::memory_order_relaxed);
        return value;
      }
      return std::bit_cast<double>(expected);
    }
    Shard& shard = shards[CounterHash(bits)];
    std::unique_lock lock(shard.mutex);
    auto [it, inserted] = shard.values.try_emplace(bits, value);
    if (inserted) size.fetch_add(1, std::memory_order_relaxed);
    return it->second;
  }

  static std::size_t CounterHash(std::uint64_t bits) {
    return static_cast<std::size_t>((bits * 0x9e3779b97f4a7c15ULL) >> 58) %
           kShards;
  }

  struct Shard {
    mutable std::shared_mutex mutex;
    std::unordered_map<std::uint64_t, double> values;
  };

  const bool use_dense;
  const int n_players;
  mutable std::once_flag dense_once;
  mutable std::vector<std::atomic<std::uint64_t>> dense;
  std::array<Shard, kShards> shards;
  std::atomic<std::size_t> size{0};
  std::atomic<std::uint64_t> oracle_calls{0};
};

CoalitionGame::CoalitionGame(int n_players, Oracle oracle)
    : n_players_(n_players), oracle_(std::move(oracle)) {
  if (n_players < 1 || n_players > kMaxPlayers) {
    throw std::invalid_argument("CoalitionGame: n_players must be in [1, 64]");
  }
  if (!oracle_) throw std::invalid_argument("CoalitionGame: empty oracle");
  cache_ = std::make_shared<Cache>(n_players);
}

CoalitionGame CoalitionGame::FromTable(std::vector<double> values) {
  const std::size_t size = values.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw std::invalid_argument(
        "CoalitionGame::FromTable: table size must be 2^N with N >= 1, got " +
        std::to_string(size));
  }
  const int n = std::countr_zero(size);
  auto table = std::make_shared<const std::vector<double>>(std::move(values));
  return CoalitionGame(
      n, [table](const Coalition& s) { return (*table)[s.bits()]; });
}

CoalitionGame CoalitionGame::Sum(const CoalitionGame& v,
                                 const CoalitionGame& w) {
  if (v.n_players() != w.n_players()) {
    throw std::invalid_argument("CoalitionGame::Sum: player count mismatch");
  }
  return CoalitionGame(v.n_players(), [v, w](const Coalition& s) {
    return v.value(s) + w.value(s);
  });
}

double CoalitionGame::value(const Coalition& s) const {
  if (s.n_players() != n_players_) {
    throw std::invalid_argument("CoalitionGame::value: coalition over " +
                                std::to_string(s.n_players()) +
                                " players, game has " +
                                std::to_string(n_players_));
  }
  double cached;
  if (cache_->Lookup(s.bits(), &cached)) return cached;
  cache_->oracle_calls.fetch_add(1, std::memory_order_relaxed);
  const double computed = oracle_(s);
  if (!std::isfinite(computed)) {
    throw ComputationError("oracle returned a non-finite value for coalition " +
                           s.ToString());
  }
  return cache_->Insert(s.bits(), computed);
}

double CoalitionGame::value(std::uint64_t bits) const {
  return value(Coalition(n_players_, bits));
}

std::uint64_t CoalitionGame::oracle_calls() const {
  return cache_->oracle_calls.load(std::memory_order_relaxed);
}

std::size_t CoalitionGame::cache_size() const {
  return cache_->size.load(std::memory_order_relaxed);
}

double MarginalContribution(const CoalitionGame& game, int player,
                            const Coalition& s) {
  if (player < 0 || player >= game.n_players()) {
    throw std::invalid_argument("MarginalContribution: player " +
                                std::to_string(player) + " out of range");
  }
  if (s.contains(player)) {
    throw std::invalid_argument("MarginalContribution: player " +
                                std::to_string(player) + " already in " +
                                s.ToString());
  }
  return game.value(s.with(player)) - game.value(s);
}

}  // namespace shaplab
