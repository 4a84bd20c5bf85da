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

#include <compare>
#include <cstdint>
#include <functional>

namespace lineagelab {

/// Strongly typed 64-bit identifier. The tag only distinguishes id spaces.
template <class Tag>
struct Id {
  std::uint64_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint64_t v) : value(v) {}

  friend constexpr auto operator<=>(Id, Id) = default;
};

struct DataItemTag;
struct ComponentTag;
struct SetTag;

/// Opaque identifier of one attribute-value.
using DataItemId = Id<DataItemTag>;
/// Canonical component label: the minimum DataItemId in the component.
using ComponentId = Id<ComponentTag>;
/// Weakly connected set id, globally unique and dense from 1.
using SetId = Id<SetTag>;

}  // namespace lineagelab

template <class Tag>
struct std::hash<lineagelab::Id<Tag>> {
  std::size_t operator()(lineagelab::Id<Tag> id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};
