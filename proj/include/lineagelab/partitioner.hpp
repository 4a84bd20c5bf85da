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
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lineagelab/hash.hpp"
#include "lineagelab/model.hpp"
#include "lineagelab/wcc.hpp"

namespace lineagelab {

inline constexpr std::uint64_t kDefaultTheta = 25000;
/// Size cut used by the "sets with >= N nodes" statistic.
inline constexpr std::uint64_t kLargeSetStatCut = 1000;

/// An item of a component maps to no table inside the splits, or has no table.
class PlanCoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A triple endpoint is missing from the set catalog.
class CatalogCoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PartitionPlan {
  std::uint64_t theta = kDefaultTheta;
  std::vector<SplitNode> root_splits;
};

struct WeaklyConnectedSet {
  std::vector<DataItemId> items;  // ascending
  /// Split whose induced subgraph produced the set. Empty when the whole
  /// component is one set.
  std::string split_id;
  /// Minimum item of the (sub)component being partitioned when the set was
  /// produced. Sets with equal (split_id, origin) come from one W(sp, c).
  DataItemId origin;
  std::uint32_t depth = 0;  // recursion level of split_id; 0 for root splits
  bool oversized = false;   // >= theta, kept because its split has no children
};

/// Per-split census of induced components, counted before any recursion.
struct SplitStats {
  std::string split_id;
  std::uint32_t depth = 0;
  std::uint64_t sets = 0;
  std::uint64_t sets_ge_1000 = 0;
  std::uint64_t largest = 0;
};

struct PartitionedComponentStats {
  ComponentId component;
  std::uint64_t nodes = 0;
  std::uint64_t sets = 0;
  std::vector<SplitStats> splits;  // in first-visit order
};

struct SetInfo {
  ComponentId component;
  DataItemId min_item;
  std::uint64_t size = 0;
  std::string split_id;
  DataItemId origin;
  std::uint32_t depth = 0;
};

/// Item -> weakly connected set assignment. SetIds are dense from 1 and
/// ordered by (component, minimum member).
class SetCatalog {
 public:
  std::optional<SetId> set_of(DataItemId item) const;
  std::span<const DataItemId> items() const { return items_; }
  std::span<const SetId> item_sets() const { return item_sets_; }

  std::size_t num_sets() const { return sets_.size(); }
  const SetInfo& info(SetId id) const { return sets_.at(id.value - 1); }
  ComponentId component_of(SetId id) const { return info(id).component; }

  /// Component of each set, indexed by SetId - 1.
  std::vector<ComponentId> set_components() const;
  /// One row per item, ascending by item.
  std::vector<ItemSetRow> item_rows() const;

  std::uint64_t theta() const { return theta_; }
  std::span<const PartitionedComponentStats> partitioned() const { return partitioned_; }
  std::span<const std::string> warnings() const { return warnings_; }

 private:
  friend SetCatalog build_catalog(const ProvGraph&, const ComponentLabeling&, const PartitionPlan&, ExecPolicy);

  std::uint64_t theta_ = 0;
  std::vector<DataItemId> items_;
  std::vector<SetId> item_sets_;
  std::vector<SetInfo> sets_;
  std::vector<PartitionedComponentStats> partitioned_;
  std::vector<std::string> warnings_;
};

/// Splits component `c` along `splits`: every split contributes the weakly
/// connected components of the subgraph induced by c's items in that split.
/// An induced component with >= theta nodes is split again along the
/// split's children; without children it is kept and flagged oversized.
/// A component below theta comes back whole.
std::vector<WeaklyConnectedSet> partition_large_component(const ProvGraph& g, const ComponentLabeling& labeling,
                                                          ComponentId c, std::span<const SplitNode> splits,
                                                          std::uint64_t theta);

/// Components below theta become one set each; the rest are partitioned.
SetCatalog build_catalog(const ProvGraph& g, const ComponentLabeling& labeling, const PartitionPlan& plan,
                         ExecPolicy policy = ExecPolicy::parallel);

/// Triples in input order with both endpoints' set ids.
std::vector<AnnotatedTriple> annotate(const ProvGraph& g, const SetCatalog& catalog,
                                      ExecPolicy policy = ExecPolicy::parallel);

/// Distinct cross-set (src_csid, dst_csid) pairs, ascending.
std::vector<SetDependency> extract_set_dependencies(std::span<const AnnotatedTriple> annotated);

/// The catalog-stats.json document.
nlohmann::json catalog_stats_json(const SetCatalog& catalog, std::size_t num_components,
                                  std::uint64_t num_triples, std::uint64_t num_set_dependencies);

}  // namespace lineagelab
