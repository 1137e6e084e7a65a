// Copyright 2026 The nbspec authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace nbspec {

// Mixer behind seed derivation; also used for deterministic start vectors.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic 64-bit generator with portable derived draws.
// The raw engine output sequence is pinned by the language standard; the
// bounded and unit-interval draws below are hand rolled because the standard
// distributions are implementation defined, and experiment artifacts must be
// byte-identical for a fixed seed on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased draw from {0, ..., bound - 1} by rejection; bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Draw from [0, 1) using 53 random mantissa bits.
  double uniform_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Stream seed for trial `index` of a run seeded with `master_seed`.
  static std::uint64_t derive_seed(std::uint64_t master_seed,
                                   std::uint64_t index) {
    return splitmix64(master_seed ^ splitmix64(index));
  }

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[uniform_below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nbspec
