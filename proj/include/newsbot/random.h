// Copyright 2026 The Newsbot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEWSBOT_RANDOM_H_
#define NEWSBOT_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace newsbot {

// One step of SplitMix64 (Steele, Lea & Flood), used to spread user seeds
// before they reach the main engine:
//   z = (x += 0x9E3779B97F4A7C15)
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
uint64_t SplitMix64(uint64_t &state);

// Combines a base seed with a stream label so independent consumers (weight
// init, shuffling, dropout, ...) draw from decorrelated streams.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// Deterministic random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard, seeded with SplitMix64(seed). All
// derived quantities are computed here rather than through the standard
// distributions, whose algorithms are implementation-defined; this keeps
// every draw bit-identical across compilers and platforms.
//
//   UniformBelow(n): rejection sampling; draws x until x >= (2^64 - n) mod n
//                    and returns x mod n (unbiased).
//   UniformDouble(): top 53 bits of one draw times 2^-53, in [0, 1).
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed);

  uint64_t NextU64() { return engine_(); }
  uint64_t UniformBelow(uint64_t n);
  double UniformDouble();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * UniformDouble(); }
  bool Bernoulli(double p) { return UniformDouble() < p; }

  // Fisher-Yates, drawing indices with UniformBelow.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(UniformBelow(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace newsbot

#endif  // NEWSBOT_RANDOM_H_
