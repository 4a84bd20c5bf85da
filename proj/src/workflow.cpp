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

#include "lineagelab/workflow.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace lineagelab {

namespace {

using Adjacency = std::unordered_map<TableId, std::vector<TableId>>;

Adjacency undirected(const DependencyGraph& depgraph) {
  Adjacency adj;
  for (const auto& [parent, child] : depgraph.edges) {
    adj[parent].push_back(child);
    adj[child].push_back(parent);
  }
  for (auto& [table, next] : adj) std::sort(next.begin(), next.end());
  return adj;
}

std::vector<TableId> bfs_order(const Adjacency& adj, const std::unordered_set<TableId>& allowed,
                               const TableId& start) {
  std::vector<TableId> order{start};
  std::unordered_set<TableId> seen{start};
  for (std::size_t head = 0; head < order.size(); ++head) {
    auto it = adj.find(order[head]);
    if (it == adj.end()) continue;
    for (const auto& next : it->second) {
      if (allowed.contains(next) && seen.insert(next).second) order.push_back(next);
    }
  }
  return order;
}

bool has_cycle(const DependencyGraph& depgraph) {
  std::map<TableId, std::size_t> indegree;
  std::map<TableId, std::vector<TableId>> out;
  for (const auto& t : depgraph.tables) indegree[t];
  for (const auto& [parent, child] : depgraph.edges) {
    indegree[parent];
    ++indegree[child];
    out[parent].push_back(child);
  }
  std::deque<TableId> ready;
  for (const auto& [t, d] : indegree) {
    if (d == 0) ready.push_back(t);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto t = ready.front();
    ready.pop_front();
    ++seen;
    for (const auto& c : out[t]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  return seen != indegree.size();
}

void check_level(const WorkflowConfig& config, std::span<const SplitNode> splits,
                 const std::set<TableId>& expected, const std::string& where,
                 std::vector<std::string>& problems) {
  std::set<TableId> covered;
  for (const auto& sp : splits) {
    if (sp.tables.empty()) {
      problems.push_back("split '" + sp.id + "' has no tables");
      continue;
    }
    for (const auto& t : sp.tables) {
      if (!expected.contains(t)) {
        problems.push_back("split '" + sp.id + "' lists table '" + t + "' outside " + where);
      }
      if (!covered.insert(t).second) {
        problems.push_back("table '" + t + "' appears in more than one split under " + where);
      }
    }
    if (!weakly_connected(config.depgraph, sp.tables)) {
      problems.push_back("split '" + sp.id + "' is not weakly connected in the dependency graph");
    }
    if (!sp.children.empty()) {
      std::set<TableId> own(sp.tables.begin(), sp.tables.end());
      check_level(config, sp.children, own, "split '" + sp.id + "'", problems);
    }
  }
  for (const auto& t : expected) {
    if (!covered.contains(t)) problems.push_back("table '" + t + "' is not covered by the splits of " + where);
  }
}

}  // namespace

bool weakly_connected(const DependencyGraph& depgraph, std::span<const TableId> tables) {
  if (tables.empty()) return false;
  std::unordered_set<TableId> allowed(tables.begin(), tables.end());
  auto order = bfs_order(undirected(depgraph), allowed, tables.front());
  return order.size() == allowed.size();
}

std::vector<std::string> validate_workflow(const WorkflowConfig& config) {
  std::vector<std::string> problems;
  std::set<TableId> tables;
  for (const auto& t : config.depgraph.tables) {
    if (!tables.insert(t).second) problems.push_back("table '" + t + "' is declared twice");
  }
  for (const auto& [parent, child] : config.depgraph.edges) {
    for (const auto& t : {parent, child}) {
      if (!tables.contains(t)) problems.push_back("edge references undeclared table '" + t + "'");
    }
  }
  if (has_cycle(config.depgraph)) problems.push_back("dependency graph has a cycle");

  std::set<std::string> ids;
  for_each_split(config.splits, [&](const SplitNode& sp) {
    if (!ids.insert(sp.id).second) problems.push_back("split id '" + sp.id + "' is not unique");
  });
  if (config.splits.empty()) {
    problems.push_back("no splits defined");
  } else {
    check_level(config, config.splits, tables, "the dependency graph", problems);
  }
  return problems;
}

std::optional<std::pair<SplitNode, SplitNode>> suggest_bisection(const DependencyGraph& depgraph,
                                                                 const SplitNode& split) {
  if (split.tables.size() < 2 || !weakly_connected(depgraph, split.tables)) return std::nullopt;
  std::unordered_set<TableId> allowed(split.tables.begin(), split.tables.end());
  auto start = *std::min_element(split.tables.begin(), split.tables.end());
  auto order = bfs_order(undirected(depgraph), allowed, start);

  // Try prefix sizes in order of distance from the midpoint.
  const std::size_t n = order.size();
  std::vector<std::size_t> sizes;
  for (std::size_t k = 1; k < n; ++k) sizes.push_back(k);
  std::stable_sort(sizes.begin(), sizes.end(), [n](std::size_t a, std::size_t b) {
    auto da = a * 2 > n ? a * 2 - n : n - a * 2;
    auto db = b * 2 > n ? b * 2 - n : n - b * 2;
    return da < db;
  });
  for (auto k : sizes) {
    std::vector<TableId> first(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<TableId> rest(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    if (weakly_connected(depgraph, rest)) {
      return std::pair{SplitNode{split.id + ".a", std::move(first), {}},
                       SplitNode{split.id + ".b", std::move(rest), {}}};
    }
  }
  return std::nullopt;
}

}  // namespace lineagelab
