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
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lineagelab/ids.hpp"

namespace lineagelab {

using TableId = std::string;

/// One lineage edge: `dst` was derived from `src` by transformation `op`.
/// `meta` carries run-time parameters or timestamps and is never interpreted.
struct ProvTriple {
  DataItemId src;
  DataItemId dst;
  std::string op;
  std::string meta;
};

/// Identity of a triple within a dataset. `meta` is not part of it.
inline auto edge_key(const ProvTriple& t) { return std::tie(t.src, t.dst, t.op); }

struct ProvGraph {
  std::vector<ProvTriple> triples;
  std::unordered_map<DataItemId, TableId> item_table;

  /// Sorted, de-duplicated union of triple endpoints and item_table keys.
  std::vector<DataItemId> items() const;
};

struct Edge {
  DataItemId src;
  DataItemId dst;
};

std::vector<Edge> edges_of(const ProvGraph& g);

/// Workflow dependency graph: which tables are generated from which.
struct DependencyGraph {
  std::vector<TableId> tables;
  std::vector<std::pair<TableId, TableId>> edges;  // parent -> child
};

/// A weakly connected group of workflow tables, optionally subdivided.
struct SplitNode {
  std::string id;
  std::vector<TableId> tables;
  std::vector<SplitNode> children;
};

/// Dependency graph plus the split hierarchy over it.
struct WorkflowConfig {
  DependencyGraph depgraph;
  std::vector<SplitNode> splits;
  std::uint64_t theta = 0;  // 0: not set in the document
};

struct AnnotatedTriple {
  DataItemId src;
  DataItemId dst;
  std::string op;
  SetId src_csid;
  SetId dst_csid;
  std::string meta;
};

inline ProvTriple to_prov(const ProvTriple& t) { return t; }
inline ProvTriple to_prov(const AnnotatedTriple& t) { return {t.src, t.dst, t.op, t.meta}; }

struct SetDependency {
  SetId src_csid;
  SetId dst_csid;

  friend auto operator<=>(const SetDependency&, const SetDependency&) = default;
};

/// Item to set/component membership; the row type of the item lookup store.
struct ItemSetRow {
  DataItemId item;
  SetId csid;
  ComponentId ccid;
};

struct QueryMetrics {
  std::uint64_t rounds = 0;
  std::uint64_t partitions_scanned = 0;
  std::uint64_t rows_scanned = 0;
  std::uint64_t triples_recursed = 0;
  std::uint64_t sets_in_S = 0;
  bool cycle_detected = false;
};

/// Ancestor closure of `root`. Triples are ordered by (distance from root,
/// src, dst, op); `distances[i]` is 0 for triples whose dst is root.
struct LineageResult {
  DataItemId root;
  std::vector<ProvTriple> triples;
  std::vector<std::uint32_t> distances;

  bool empty() const { return triples.empty(); }
  /// Number of distinct ancestor items.
  std::size_t ancestor_count() const;
};

/// Triple-set equality, ignoring order and meta.
bool same_triples(const LineageResult& a, const LineageResult& b);

/// Sorts triples (with their distances) into display order.
void order_for_display(LineageResult& result);

}  // namespace lineagelab
