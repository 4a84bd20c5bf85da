// Copyright 2026 The LineageLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace lineagelab {

/// PCG32 (XSH-RR output, 64-bit LCG state), O'Neill's reference
/// pcg32_random_r with pcg32_srandom_r seeding. `stream` selects one of
/// 2^63 independent sequences.
class Pcg32 {
 public:
  Pcg32(std::uint64_t seed, std::uint64_t stream) : inc_((stream << 1u) | 1u) {
    next();
    state_ += seed;
    next();
  }

  std::uint32_t next() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  /// Uniform in [0, bound) by rejection, as pcg32_boundedrand_r.
  std::uint32_t below(std::uint32_t bound) {
    std::uint32_t threshold = (-bound) % bound;
    while (true) {
      std::uint32_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    std::uint64_t hi = next() >> 5;  // 27 bits
    std::uint64_t lo = next() >> 6;  // 26 bits
    return static_cast<double>((hi << 26) | lo) * (1.0 / 9007199254740992.0);
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_;
};

}  // namespace lineagelab
