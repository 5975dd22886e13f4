// Copyright 2026 The seiropt Authors
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

#ifndef SEIROPT_RNG_HPP_
#define SEIROPT_RNG_HPP_

#include <cstdint>
#include <random>

namespace seiropt {

// Seeded RNG shared by every stochastic component. All draws go through the
// helpers below instead of std::uniform_*_distribution, whose output is
// implementation-defined; mt19937_64 itself is pinned by the standard, so
// seeded runs reproduce bit-for-bit across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound), bitmask rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t mask = mask_for(bound - 1);
    std::uint64_t v = engine_() & mask;
    while (v >= bound) v = engine_() & mask;
    return v;
  }

  int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  // Uniform double in [0, 1), 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // unit() < p; never consumes entropy for p <= 0.
  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    return unit() < p;
  }

 private:
  static std::uint64_t mask_for(std::uint64_t max_value) {
    std::uint64_t mask = max_value;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    return mask;
  }

  std::mt19937_64 engine_;
};

}  // namespace seiropt

#endif  // SEIROPT_RNG_HPP_
