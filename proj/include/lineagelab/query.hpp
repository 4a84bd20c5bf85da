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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lineagelab/model.hpp"
#include "lineagelab/partition_store.hpp"

namespace lineagelab {

enum class Strategy { rq, ccprov, csprov };

inline constexpr Strategy kAllStrategies[] = {Strategy::rq, Strategy::ccprov, Strategy::csprov};

const char* to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

/// Keys still to expand and keys already expanded; disjoint.
class Frontier {
 public:
  explicit Frontier(std::uint64_t start) : pending_{start} {}

  std::span<const std::uint64_t> pending() const { return pending_; }
  const std::unordered_set<std::uint64_t>& visited() const { return visited_; }
  bool done() const { return pending_.empty(); }

  /// Moves the pending keys to visited; the unvisited candidates become
  /// the next pending set.
  void advance(std::vector<std::uint64_t> candidates);

 private:
  std::vector<std::uint64_t> pending_;
  std::unordered_set<std::uint64_t> visited_;
};

struct QueryOutcome {
  LineageResult result;
  QueryMetrics metrics;
};

/// True when the triples contain a directed cycle.
bool has_cycle(std::span<const ProvTriple> triples);

/// Frontier BFS over a store keyed on dst. Each round multi-looks-up the
/// pending items and queues the unvisited sources of the triples found.
/// An unknown q costs one round and one partition.
template <class Row>
QueryOutcome recursive_query(const PartitionedStore<Row>& by_dst, DataItemId q,
                             ExecPolicy policy = ExecPolicy::parallel) {
  QueryOutcome out;
  out.result.root = q;
  Frontier frontier(q.value);
  ScanCost cost;
  for (std::uint32_t distance = 0; !frontier.done(); ++distance) {
    auto scan = by_dst.multi_lookup(frontier.pending(), policy);
    cost += scan.cost;
    ++out.metrics.rounds;
    std::vector<std::uint64_t> parents;
    parents.reserve(scan.rows.size());
    for (auto& row : scan.rows) {
      parents.push_back(row.src.value);
      out.result.triples.push_back(to_prov(row));
      out.result.distances.push_back(distance);
    }
    frontier.advance(std::move(parents));
  }
  out.metrics.partitions_scanned = cost.partitions;
  out.metrics.rows_scanned = cost.rows;
  out.metrics.triples_recursed = by_dst.size();
  out.metrics.cycle_detected = has_cycle(out.result.triples);
  order_for_display(out.result);
  return out;
}

/// Hash-partitioned inputs of all three strategies, built from one dataset.
struct StrategyInputs {
  PartitionedStore<AnnotatedTriple> triples_by_dst;
  PartitionedStore<AnnotatedTriple> triples_by_dst_csid;
  PartitionedStore<SetDependency> setdeps_by_dst_csid;
  PartitionedStore<ItemSetRow> item_set_by_item;
  std::vector<ComponentId> set_component;  // indexed by SetId - 1

  std::uint64_t total_triples() const { return triples_by_dst.size(); }
  StorageTier tier() const { return triples_by_dst.tier(); }
};

StrategyInputs build_inputs(std::span<const AnnotatedTriple> annotated, std::span<const SetDependency> deps,
                            std::span<const ItemSetRow> items, std::size_t num_partitions);

/// Writes the four stores under `dir` and returns disk-tier inputs.
StrategyInputs persist_inputs(const StrategyInputs& inputs, const std::filesystem::path& dir);
StrategyInputs open_inputs(const std::filesystem::path& dir, std::vector<ComponentId> set_component);
bool inputs_exist(const std::filesystem::path& dir, std::size_t num_partitions);

/// Set and component of q from one partition of the item store.
std::optional<ItemSetRow> find_connected_set(const StrategyInputs& inputs, DataItemId q, ScanCost& cost);

QueryOutcome rq_lineage(const StrategyInputs& inputs, DataItemId q, ExecPolicy policy = ExecPolicy::parallel);

/// Looks up q's component, filters the dst-keyed store down to it, and
/// recurses over the filtered store.
QueryOutcome ccprov_lineage(const StrategyInputs& inputs, DataItemId q, ExecPolicy policy = ExecPolicy::parallel);

/// Looks up q's set, closes it under set dependencies, gathers the triples
/// whose dst lies in those sets, and recurses over them. When `restricted`
/// is given it receives the gathered triples.
QueryOutcome csprov_lineage(const StrategyInputs& inputs, DataItemId q, ExecPolicy policy = ExecPolicy::parallel,
                            std::vector<AnnotatedTriple>* restricted = nullptr);

QueryOutcome run_strategy(const StrategyInputs& inputs, Strategy s, DataItemId q,
                          ExecPolicy policy = ExecPolicy::parallel);

}  // namespace lineagelab
