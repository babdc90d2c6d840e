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

#ifndef SHAPLAB_RNG_H_
#define SHAPLAB_RNG_H_

#include <cstdint>

namespace shaplab {

// Stateless counter-based generator. Every draw is a pure function of
// (seed, a, b, c), so a value depends only on its key and never on how many
// draws were made before it. Output is identical on every platform, unlike
// the <random> distributions whose algorithms are implementation-defined.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t Bits(std::uint64_t a, std::uint64_t b = 0,
                     std::uint64_t c = 0) const;

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform(std::uint64_t a, std::uint64_t b = 0,
                 std::uint64_t c = 0) const;

  // Uniform on {0, ..., n - 1}, unbiased. n must be > 0.
  std::uint64_t Index(std::uint64_t n, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) const;

  // Standard normal via Box-Muller on two keyed uniforms.
  double Normal(std::uint64_t a, std::uint64_t b = 0,
                std::uint64_t c = 0) const;

  static std::uint64_t Mix(std::uint64_t x);

 private:
  std::uint64_t seed_;
};

}  // namespace shaplab

#endif  // SHAPLAB_RNG_H_
