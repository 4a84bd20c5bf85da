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

#include "lineagelab/partitioner.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "lineagelab/parallel.hpp"
#include "lineagelab/workflow.hpp"

namespace lineagelab {

namespace {

using LocalEdge = std::pair<std::uint32_t, std::uint32_t>;

struct TableIndex {
  std::unordered_map<TableId, std::uint32_t> ids;

  std::uint32_t intern(const TableId& t) {
    return ids.try_emplace(t, static_cast<std::uint32_t>(ids.size())).first->second;
  }
  std::optional<std::uint32_t> find(const TableId& t) const {
    auto it = ids.find(t);
    if (it == ids.end()) return std::nullopt;
    return it->second;
  }
};

// One component's members with their tables and the component-internal edges.
struct Members {
  std::vector<DataItemId> items;  // ascending
  std::vector<std::uint32_t> tables;
  std::vector<LocalEdge> edges;
};

struct PartitionOutput {
  std::vector<WeaklyConnectedSet> sets;
  std::vector<SplitStats> stats;
  std::vector<std::string> warnings;

  SplitStats& stats_for(const SplitNode& sp, std::uint32_t depth) {
    for (auto& s : stats) {
      if (s.split_id == sp.id) return s;
    }
    return stats.emplace_back(SplitStats{sp.id, depth, 0, 0, 0});
  }
};

class ComponentPartitioner {
 public:
  ComponentPartitioner(const TableIndex& tables, std::uint64_t theta) : tables_(tables), theta_(theta) {}

  void run(const Members& m, std::span<const SplitNode> splits, DataItemId origin, std::uint32_t depth,
           PartitionOutput& out) const {
    const std::size_t n = m.items.size();

    std::vector<int> split_of_table(tables_.ids.size(), -1);
    for (std::size_t p = 0; p < splits.size(); ++p) {
      for (const auto& t : splits[p].tables) {
        if (auto idx = tables_.find(t)) split_of_table[*idx] = static_cast<int>(p);
      }
    }
    std::vector<int> split_of_item(n);
    for (std::size_t i = 0; i < n; ++i) {
      split_of_item[i] = split_of_table[m.tables[i]];
      if (split_of_item[i] < 0) {
        std::string table;
        for (const auto& [name, idx] : tables_.ids) {
          if (idx == m.tables[i]) table = name;
        }
        throw PlanCoverageError("item " + std::to_string(m.items[i].value) + " of table '" + table +
                                "' is outside every split");
      }
    }

    // Induced components of every split at once: only same-split edges join.
    DisjointSets uf(n);
    for (auto [a, b] : m.edges) {
      if (split_of_item[a] == split_of_item[b]) uf.unite(a, b);
    }
    std::vector<std::uint32_t> comp_of_root(n, UINT32_MAX);
    std::vector<std::vector<std::uint32_t>> comps;  // member local indices, ascending
    std::vector<int> comp_split;
    for (std::uint32_t i = 0; i < n; ++i) {
      auto r = uf.find(i);
      if (comp_of_root[r] == UINT32_MAX) {
        comp_of_root[r] = static_cast<std::uint32_t>(comps.size());
        comps.emplace_back();
        comp_split.push_back(split_of_item[i]);
      }
      comps[comp_of_root[r]].push_back(i);
    }

    for (std::size_t p = 0; p < splits.size(); ++p) {
      const auto& sp = splits[p];
      bool any = false;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (comp_split[c] != static_cast<int>(p)) continue;
        any = true;
        auto& st = out.stats_for(sp, depth);
        const auto size = comps[c].size();
        ++st.sets;
        if (size >= kLargeSetStatCut) ++st.sets_ge_1000;
        st.largest = std::max<std::uint64_t>(st.largest, size);
      }
      if (!any) continue;

      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (comp_split[c] != static_cast<int>(p)) continue;
        const auto& members = comps[c];
        const bool large = members.size() >= theta_;
        if (large && !sp.children.empty()) {
          run(restrict_to(m, members), sp.children, m.items[members.front()], depth + 1, out);
          continue;
        }
        WeaklyConnectedSet set;
        set.items.reserve(members.size());
        for (auto i : members) set.items.push_back(m.items[i]);
        set.split_id = sp.id;
        set.origin = origin;
        set.depth = depth;
        set.oversized = large;
        if (large) {
          out.warnings.push_back("set of " + std::to_string(members.size()) + " nodes from split '" + sp.id +
                                 "' (min item " + std::to_string(set.items.front().value) +
                                 ") reaches theta but the split has no sub-splits");
        }
        out.sets.push_back(std::move(set));
      }
    }
  }

 private:
  // Members lie in one split, so every edge between two of them is intra-split.
  static Members restrict_to(const Members& m, const std::vector<std::uint32_t>& members) {
    Members sub;
    std::vector<std::uint32_t> local(m.items.size(), UINT32_MAX);
    sub.items.reserve(members.size());
    sub.tables.reserve(members.size());
    for (auto i : members) {
      local[i] = static_cast<std::uint32_t>(sub.items.size());
      sub.items.push_back(m.items[i]);
      sub.tables.push_back(m.tables[i]);
    }
    for (auto [a, b] : m.edges) {
      if (local[a] != UINT32_MAX && local[b] != UINT32_MAX) {
        sub.edges.emplace_back(local[a], local[b]);
      }
    }
    return sub;
  }

  const TableIndex& tables_;
  std::uint64_t theta_;
};

std::uint32_t table_of(const ProvGraph& g, const TableIndex& tables, DataItemId item) {
  auto it = g.item_table.find(item);
  if (it == g.item_table.end()) {
    throw PlanCoverageError("item " + std::to_string(item.value) + " has no table");
  }
  auto idx = tables.find(it->second);
  if (!idx) throw PlanCoverageError("table '" + it->second + "' of item " + std::to_string(item.value) + " is unknown");
  return *idx;
}

TableIndex index_tables(const ProvGraph& g, std::span<const SplitNode> splits) {
  std::vector<TableId> names;
  for (const auto& [item, table] : g.item_table) names.push_back(table);
  for_each_split(splits, [&](const SplitNode& sp) { names.insert(names.end(), sp.tables.begin(), sp.tables.end()); });
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  TableIndex index;
  for (const auto& n : names) index.intern(n);
  return index;
}

WeaklyConnectedSet whole_component(ComponentId c, std::vector<DataItemId> items) {
  WeaklyConnectedSet set;
  set.items = std::move(items);
  set.origin = DataItemId(c.value);
  return set;
}

}  // namespace

namespace {

// Members of one component with the edges among them.
Members collect_members(const ProvGraph& g, const ComponentLabeling& labeling, const TableIndex& tables,
                        ComponentId c) {
  Members m;
  auto items = labeling.items();
  auto labels = labeling.labels();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (labels[i] == c) m.items.push_back(items[i]);
  }
  m.tables.reserve(m.items.size());
  for (auto item : m.items) m.tables.push_back(table_of(g, tables, item));
  auto local = [&](DataItemId id) {
    auto it = std::lower_bound(m.items.begin(), m.items.end(), id);
    return it != m.items.end() && *it == id ? std::optional<std::uint32_t>(static_cast<std::uint32_t>(it - m.items.begin()))
                                            : std::nullopt;
  };
  for (const auto& t : g.triples) {
    auto a = local(t.src);
    if (!a) continue;
    if (auto b = local(t.dst)) m.edges.emplace_back(*a, *b);
  }
  return m;
}

PartitionOutput partition_members(const Members& m, const TableIndex& tables, ComponentId c,
                                  std::span<const SplitNode> splits, std::uint64_t theta) {
  PartitionOutput out;
  if (m.items.size() < theta) {
    out.sets.push_back(whole_component(c, m.items));
    return out;
  }
  ComponentPartitioner(tables, theta).run(m, splits, DataItemId(c.value), 0, out);
  return out;
}

}  // namespace

std::vector<WeaklyConnectedSet> partition_large_component(const ProvGraph& g, const ComponentLabeling& labeling,
                                                          ComponentId c, std::span<const SplitNode> splits,
                                                          std::uint64_t theta) {
  auto tables = index_tables(g, splits);
  auto members = collect_members(g, labeling, tables, c);
  auto out = partition_members(members, tables, c, splits, theta);
  std::sort(out.sets.begin(), out.sets.end(),
            [](const auto& a, const auto& b) { return a.items.front() < b.items.front(); });
  return std::move(out.sets);
}

std::optional<SetId> SetCatalog::set_of(DataItemId item) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it == items_.end() || *it != item) return std::nullopt;
  return item_sets_[static_cast<std::size_t>(it - items_.begin())];
}

std::vector<ComponentId> SetCatalog::set_components() const {
  std::vector<ComponentId> out;
  out.reserve(sets_.size());
  for (const auto& s : sets_) out.push_back(s.component);
  return out;
}

std::vector<ItemSetRow> SetCatalog::item_rows() const {
  std::vector<ItemSetRow> rows;
  rows.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    rows.push_back({items_[i], item_sets_[i], sets_[item_sets_[i].value - 1].component});
  }
  return rows;
}

SetCatalog build_catalog(const ProvGraph& g, const ComponentLabeling& labeling, const PartitionPlan& plan,
                         ExecPolicy policy) {
  if (plan.theta == 0) throw std::invalid_argument("theta must be positive");
  auto tables = index_tables(g, plan.root_splits);
  auto components = labeling.components();
  auto comp_index = [&](ComponentId c) {
    return static_cast<std::size_t>(
        std::lower_bound(components.begin(), components.end(), c,
                         [](const auto& e, ComponentId v) { return e.first < v; }) -
        components.begin());
  };

  // Large components get their members and internal edges in one pass.
  std::vector<std::size_t> large;
  std::vector<std::int64_t> slot_of(components.size(), -1);
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].second >= plan.theta) {
      slot_of[i] = static_cast<std::int64_t>(large.size());
      large.push_back(i);
    }
  }
  std::vector<Members> members(large.size());
  auto items = labeling.items();
  auto labels = labeling.labels();
  std::vector<std::uint32_t> local_index(items.size(), UINT32_MAX);
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto slot = slot_of[comp_index(labels[i])];
    if (slot < 0) continue;
    auto& m = members[static_cast<std::size_t>(slot)];
    local_index[i] = static_cast<std::uint32_t>(m.items.size());
    m.items.push_back(items[i]);
    m.tables.push_back(table_of(g, tables, items[i]));
  }
  if (!large.empty()) {
    for (const auto& t : g.triples) {
      auto a = std::lower_bound(items.begin(), items.end(), t.src) - items.begin();
      if (a == static_cast<std::ptrdiff_t>(items.size()) || items[static_cast<std::size_t>(a)] != t.src) {
        throw CatalogCoverageError("item " + std::to_string(t.src.value) + " is not labelled");
      }
      auto slot = slot_of[comp_index(labels[static_cast<std::size_t>(a)])];
      if (slot < 0) continue;
      auto b = std::lower_bound(items.begin(), items.end(), t.dst) - items.begin();
      members[static_cast<std::size_t>(slot)].edges.emplace_back(local_index[static_cast<std::size_t>(a)],
                                                                local_index[static_cast<std::size_t>(b)]);
    }
  }

  std::vector<PartitionOutput> outputs(large.size());
  parallel_for(large.size(), policy, [&](std::size_t k) {
    outputs[k] = partition_members(members[k], tables, components[large[k]].first, plan.root_splits, plan.theta);
    std::sort(outputs[k].sets.begin(), outputs[k].sets.end(),
              [](const auto& a, const auto& b) { return a.items.front() < b.items.front(); });
    members[k] = {};
  });

  // Small components are single sets holding all their members; SetIds go
  // out in (component, minimum member) order.
  std::vector<std::vector<DataItemId>> small_items(components.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto ci = comp_index(labels[i]);
    if (slot_of[ci] < 0) small_items[ci].push_back(items[i]);
  }

  SetCatalog catalog;
  catalog.theta_ = plan.theta;
  catalog.items_.assign(items.begin(), items.end());
  catalog.item_sets_.assign(items.size(), SetId{});
  auto assign = [&](const WeaklyConnectedSet& set, ComponentId c) {
    SetId id(catalog.sets_.size() + 1);
    catalog.sets_.push_back({c, set.items.front(), set.items.size(), set.split_id, set.origin, set.depth});
    for (auto item : set.items) {
      auto pos = std::lower_bound(catalog.items_.begin(), catalog.items_.end(), item) - catalog.items_.begin();
      catalog.item_sets_[static_cast<std::size_t>(pos)] = id;
    }
  };
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    auto c = components[ci].first;
    if (slot_of[ci] < 0) {
      assign(whole_component(c, std::move(small_items[ci])), c);
      continue;
    }
    auto& out = outputs[static_cast<std::size_t>(slot_of[ci])];
    for (const auto& set : out.sets) assign(set, c);
    catalog.partitioned_.push_back({c, components[ci].second, out.sets.size(), std::move(out.stats)});
    for (auto& w : out.warnings) catalog.warnings_.push_back("component " + std::to_string(c.value) + ": " + w);
  }
  return catalog;
}

std::vector<AnnotatedTriple> annotate(const ProvGraph& g, const SetCatalog& catalog, ExecPolicy policy) {
  std::vector<AnnotatedTriple> out(g.triples.size());
  parallel_for((g.triples.size() + 4095) / 4096, policy, [&](std::size_t chunk) {
    auto end = std::min(g.triples.size(), (chunk + 1) * 4096);
    for (std::size_t i = chunk * 4096; i < end; ++i) {
      const auto& t = g.triples[i];
      auto s = catalog.set_of(t.src);
      auto d = catalog.set_of(t.dst);
      if (!s || !d) {
        throw CatalogCoverageError("item " + std::to_string((s ? t.dst : t.src).value) + " is in no set");
      }
      out[i] = {t.src, t.dst, t.op, *s, *d, t.meta};
    }
  });
  return out;
}

std::vector<SetDependency> extract_set_dependencies(std::span<const AnnotatedTriple> annotated) {
  std::vector<SetDependency> deps;
  for (const auto& t : annotated) {
    if (t.src_csid != t.dst_csid) deps.push_back({t.src_csid, t.dst_csid});
  }
  std::sort(deps.begin(), deps.end());
  deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
  return deps;
}

nlohmann::json catalog_stats_json(const SetCatalog& catalog, std::size_t num_components, std::uint64_t num_triples,
                                  std::uint64_t num_set_dependencies) {
  std::uint64_t largest = 0, ge_cut = 0, oversized = 0;
  for (std::size_t i = 1; i <= catalog.num_sets(); ++i) {
    const auto& info = catalog.info(SetId(i));
    largest = std::max(largest, info.size);
    if (info.size >= kLargeSetStatCut) ++ge_cut;
    if (!info.split_id.empty() && info.size >= catalog.theta()) ++oversized;
  }
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& pc : catalog.partitioned()) {
    nlohmann::json splits = nlohmann::json::array();
    for (const auto& s : pc.splits) {
      splits.push_back({{"split", s.split_id},
                        {"depth", s.depth},
                        {"sets", s.sets},
                        {"sets_ge_1000", s.sets_ge_1000},
                        {"largest_set", s.largest}});
    }
    parts.push_back({{"ccid", pc.component.value}, {"nodes", pc.nodes}, {"sets", pc.sets}, {"splits", splits}});
  }
  return {
      {"theta", catalog.theta()},
      {"triples", num_triples},
      {"items", catalog.items().size()},
      {"components", num_components},
      {"sets", catalog.num_sets()},
      {"set_dependencies", num_set_dependencies},
      {"sets_ge_1000", ge_cut},
      {"largest_set", largest},
      {"oversized_sets", oversized},
      {"partitioned_components", parts},
      {"warnings", std::vector<std::string>(catalog.warnings().begin(), catalog.warnings().end())},
  };
}

}  // namespace lineagelab
