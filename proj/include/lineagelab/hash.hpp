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

#include <cstddef>
#include <cstdint>

namespace lineagelab {

/// SplitMix64 output finalizer (Steele, Lea, Flood). Bit-exact on every
/// platform; the increment step of the generator is not applied.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr const char* kPartitionHashName = "splitmix64-finalizer-mod";

constexpr std::size_t partition_of(std::uint64_t key, std::size_t num_partitions) noexcept {
  return static_cast<std::size_t>(splitmix64_mix(key) % num_partitions);
}

/// Serial or OpenMP-parallel execution of a data-parallel kernel. Both
/// produce identical output; the serial path is the reference.
enum class ExecPolicy { serial, parallel };

}  // namespace lineagelab
