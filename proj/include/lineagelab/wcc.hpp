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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lineagelab/hash.hpp"
#include "lineagelab/model.hpp"

namespace lineagelab {

/// Union-find over dense indices with path compression and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);

  std::size_t find(std::size_t x);
  /// Returns false when x and y were already joined.
  bool unite(std::size_t x, std::size_t y);
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Item -> component labels. Two items share a label iff a semipath joins
/// them; every label is the minimum item id of its component.
class ComponentLabeling {
 public:
  ComponentLabeling() = default;
  /// `items` must be sorted ascending and unique; labels are parallel.
  ComponentLabeling(std::vector<DataItemId> items, std::vector<ComponentId> labels);

  std::optional<ComponentId> find(DataItemId item) const;
  std::span<const DataItemId> items() const { return items_; }
  std::span<const ComponentId> labels() const { return labels_; }

  /// (component, node count), ascending by component id.
  std::span<const std::pair<ComponentId, std::uint64_t>> components() const { return sizes_; }
  std::uint64_t component_size(ComponentId c) const;
  std::size_t num_components() const { return sizes_.size(); }

  friend bool operator==(const ComponentLabeling& a, const ComponentLabeling& b) {
    return a.items_ == b.items_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<DataItemId> items_;
  std::vector<ComponentId> labels_;
  std::vector<std::pair<ComponentId, std::uint64_t>> sizes_;
};

/// Components over `edges`. Items in `extra_items` that touch no edge become
/// singleton components. The parallel policy joins edges concurrently with
/// lock-free linking toward the smaller index; the serial policy is the
/// plain union-find reference. Both return identical labelings.
ComponentLabeling compute_wcc(std::span<const Edge> edges, std::span<const DataItemId> extra_items = {},
                              ExecPolicy policy = ExecPolicy::parallel);

/// Components of the whole graph, item_table entries included.
ComponentLabeling compute_wcc(const ProvGraph& g, ExecPolicy policy = ExecPolicy::parallel);

/// Components of the subgraph induced by `items`: only triples with both
/// endpoints in `items` count, and every listed item is labelled.
ComponentLabeling induced_wcc(const ProvGraph& g, std::span<const DataItemId> items);
ComponentLabeling induced_wcc(std::span<const Edge> edges, std::span<const DataItemId> items);

}  // namespace lineagelab
