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

#include "lineagelab/query.hpp"

#include <unordered_map>

namespace lineagelab {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::rq: return "rq";
    case Strategy::ccprov: return "ccprov";
    case Strategy::csprov: return "csprov";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (auto s : kAllStrategies) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

void Frontier::advance(std::vector<std::uint64_t> candidates) {
  visited_.insert(pending_.begin(), pending_.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::erase_if(candidates, [&](std::uint64_t k) { return visited_.contains(k); });
  pending_ = std::move(candidates);
}

bool has_cycle(std::span<const ProvTriple> triples) {
  std::unordered_map<std::uint64_t, std::size_t> indegree;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> children;
  for (const auto& t : triples) {
    indegree[t.src.value];
    ++indegree[t.dst.value];
    children[t.src.value].push_back(t.dst.value);
  }
  std::vector<std::uint64_t> ready;
  for (const auto& [node, d] : indegree) {
    if (d == 0) ready.push_back(node);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    auto node = ready.back();
    ready.pop_back();
    ++removed;
    if (auto it = children.find(node); it != children.end()) {
      for (auto c : it->second) {
        if (--indegree[c] == 0) ready.push_back(c);
      }
    }
  }
  return removed != indegree.size();
}

namespace {

constexpr const char* kStoreNames[] = {"triples_by_dst", "triples_by_dst_csid", "setdeps_by_dst_csid",
                                       "item_set_by_item"};

void note_scan(QueryMetrics& m, const ScanCost& c) {
  m.partitions_scanned += c.partitions;
  m.rows_scanned += c.rows;
}

// Folds the metrics of the final recursive phase into those of the
// preceding lookup phases.
QueryOutcome finish(QueryOutcome inner, const QueryMetrics& before) {
  inner.metrics.partitions_scanned += before.partitions_scanned;
  inner.metrics.rows_scanned += before.rows_scanned;
  inner.metrics.sets_in_S = before.sets_in_S;
  inner.metrics.triples_recursed = before.triples_recursed;
  return inner;
}

QueryOutcome unknown_item(DataItemId q, const QueryMetrics& before) {
  QueryOutcome out;
  out.result.root = q;
  out.metrics = before;
  return out;
}

}  // namespace

StrategyInputs build_inputs(std::span<const AnnotatedTriple> annotated, std::span<const SetDependency> deps,
                            std::span<const ItemSetRow> items, std::size_t num_partitions) {
  std::vector<AnnotatedTriple> rows(annotated.begin(), annotated.end());
  std::vector<ComponentId> set_component;
  for (const auto& r : items) {
    if (r.csid.value == 0) throw std::invalid_argument("set ids start at 1");
    if (set_component.size() < r.csid.value) set_component.resize(r.csid.value);
    set_component[r.csid.value - 1] = r.ccid;
  }
  return {
      PartitionedStore<AnnotatedTriple>::build(rows, kAnnotatedByDst, num_partitions),
      PartitionedStore<AnnotatedTriple>::build(std::move(rows), kAnnotatedByDstCsid, num_partitions),
      PartitionedStore<SetDependency>::build({deps.begin(), deps.end()}, kSetDepByDstCsid, num_partitions),
      PartitionedStore<ItemSetRow>::build({items.begin(), items.end()}, kItemSetByItem, num_partitions),
      std::move(set_component),
  };
}

StrategyInputs persist_inputs(const StrategyInputs& inputs, const std::filesystem::path& dir) {
  return {
      inputs.triples_by_dst.persist(dir / kStoreNames[0]),
      inputs.triples_by_dst_csid.persist(dir / kStoreNames[1]),
      inputs.setdeps_by_dst_csid.persist(dir / kStoreNames[2]),
      inputs.item_set_by_item.persist(dir / kStoreNames[3]),
      inputs.set_component,
  };
}

StrategyInputs open_inputs(const std::filesystem::path& dir, std::vector<ComponentId> set_component) {
  return {
      PartitionedStore<AnnotatedTriple>::open(dir / kStoreNames[0], kAnnotatedByDst),
      PartitionedStore<AnnotatedTriple>::open(dir / kStoreNames[1], kAnnotatedByDstCsid),
      PartitionedStore<SetDependency>::open(dir / kStoreNames[2], kSetDepByDstCsid),
      PartitionedStore<ItemSetRow>::open(dir / kStoreNames[3], kItemSetByItem),
      std::move(set_component),
  };
}

bool inputs_exist(const std::filesystem::path& dir, std::size_t num_partitions) {
  for (const char* name : kStoreNames) {
    auto manifest = dir / name / "manifest.json";
    if (!std::filesystem::exists(manifest)) return false;
    auto j = nlohmann::json::parse(read_file(manifest), nullptr, false);
    if (j.is_discarded() || !j.contains("partitions") || j["partitions"] != num_partitions) return false;
  }
  return true;
}

std::optional<ItemSetRow> find_connected_set(const StrategyInputs& inputs, DataItemId q, ScanCost& cost) {
  auto scan = inputs.item_set_by_item.lookup(q.value);
  cost += scan.cost;
  if (scan.rows.empty()) return std::nullopt;
  return scan.rows.front();
}

QueryOutcome rq_lineage(const StrategyInputs& inputs, DataItemId q, ExecPolicy policy) {
  return recursive_query(inputs.triples_by_dst, q, policy);
}

QueryOutcome ccprov_lineage(const StrategyInputs& inputs, DataItemId q, ExecPolicy policy) {
  QueryMetrics before;
  ScanCost cost;
  auto membership = find_connected_set(inputs, q, cost);
  note_scan(before, cost);
  if (!membership) return unknown_item(q, before);

  const auto c = membership->ccid;
  const auto& set_component = inputs.set_component;
  auto [component_store, filter_cost] = inputs.triples_by_dst.restrict(
      [&](const AnnotatedTriple& t) {
        auto i = t.dst_csid.value - 1;
        return i < set_component.size() && set_component[i] == c;
      },
      policy);
  note_scan(before, filter_cost);
  before.triples_recursed = component_store.size();
  return finish(recursive_query(component_store, q, policy), before);
}

QueryOutcome csprov_lineage(const StrategyInputs& inputs, DataItemId q, ExecPolicy policy,
                            std::vector<AnnotatedTriple>* restricted) {
  QueryMetrics before;
  ScanCost cost;
  auto membership = find_connected_set(inputs, q, cost);
  note_scan(before, cost);
  if (!membership) return unknown_item(q, before);

  // Set lineage: the same frontier logic over set dependencies.
  Frontier sets(membership->csid.value);
  while (!sets.done()) {
    auto scan = inputs.setdeps_by_dst_csid.multi_lookup(sets.pending(), policy);
    note_scan(before, scan.cost);
    std::vector<std::uint64_t> parents;
    parents.reserve(scan.rows.size());
    for (const auto& d : scan.rows) parents.push_back(d.src_csid.value);
    sets.advance(std::move(parents));
  }
  std::vector<std::uint64_t> lineage_sets(sets.visited().begin(), sets.visited().end());
  std::sort(lineage_sets.begin(), lineage_sets.end());
  before.sets_in_S = lineage_sets.size();

  auto gathered = inputs.triples_by_dst_csid.multi_lookup(lineage_sets, policy);
  note_scan(before, gathered.cost);
  before.triples_recursed = gathered.rows.size();
  if (restricted) *restricted = gathered.rows;
  auto store = PartitionedStore<AnnotatedTriple>::build(std::move(gathered.rows), kAnnotatedByDst,
                                                        inputs.triples_by_dst.num_partitions());
  return finish(recursive_query(store, q, policy), before);
}

QueryOutcome run_strategy(const StrategyInputs& inputs, Strategy s, DataItemId q, ExecPolicy policy) {
  switch (s) {
    case Strategy::rq: return rq_lineage(inputs, q, policy);
    case Strategy::ccprov: return ccprov_lineage(inputs, q, policy);
    case Strategy::csprov: return csprov_lineage(inputs, q, policy);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace lineagelab
