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

#include "shaplab/rng.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shaplab {
namespace {

__extension__ typedef unsigned __int128 Uint128;

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t Key(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                  std::uint64_t c, std::uint64_t attempt) {
  std::uint64_t h = CounterRng::Mix(seed + kGolden);
  h = CounterRng::Mix(h ^ (a + kGolden * 1));
  h = CounterRng::Mix(h ^ (b + kGolden * 2));
  h = CounterRng::Mix(h ^ (c + kGolden * 3));
  return CounterRng::Mix(h ^ (attempt + kGolden * 4));
}

}  // namespace

// SplitMix64 finalizer.
std::uint64_t CounterRng::Mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t CounterRng::Bits(std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) const {
  return Key(seed_, a, b, c, 0);
}

double CounterRng::Uniform(std::uint64_t a, std::uint64_t b,
                           std::uint64_t c) const {
  return static_cast<double>(Bits(a, b, c) >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::Index(std::uint64_t n, std::uint64_t a,
                                std::uint64_t b, std::uint64_t c) const {
  if (n == 0) throw std::invalid_argument("CounterRng::Index: n must be > 0");
  // Lemire's multiply-shift with rejection; rejected draws move to the next
  // attempt counter so the result stays a pure function of the key.
  const std::uint64_t threshold = (0 - n) % n;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Uint128 m = static_cast<Uint128>(Key(seed_, a, b, c, attempt)) * n;
    if (static_cast<std::uint64_t>(m) >= threshold) {
      return static_cast<std::uint64_t>(m >> 64);
    }
  }
}

double CounterRng::Normal(std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) const {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - static_cast<double>(Key(seed_, a, b, c, 0) >> 11) *
                              0x1.0p-53;
  const double u2 =
      static_cast<double>(Key(seed_, a, b, c, 1) >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace shaplab
