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

#include "lineagelab/validate.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace lineagelab {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::self_loop: return "self_loop";
    case ViolationKind::duplicate_triple: return "duplicate_triple";
    case ViolationKind::missing_item_table: return "missing_item_table";
    case ViolationKind::cycle: return "cycle";
  }
  return "unknown";
}

namespace {

std::string describe(const ProvTriple& t) {
  std::ostringstream os;
  os << "(" << t.src.value << "," << t.dst.value << "," << t.op << ")";
  return os.str();
}

// Finds one directed cycle with an iterative three-colour DFS. Returns the
// cycle's items in path order, or an empty vector when the graph is a DAG.
std::vector<DataItemId> find_cycle(const ProvGraph& g) {
  auto nodes = g.items();
  auto index_of = [&](DataItemId id) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  std::vector<std::size_t> offsets(nodes.size() + 1, 0);
  for (const auto& t : g.triples) ++offsets[index_of(t.src) + 1];
  for (std::size_t i = 0; i < nodes.size(); ++i) offsets[i + 1] += offsets[i];
  std::vector<std::size_t> targets(g.triples.size());
  {
    auto fill = offsets;
    for (const auto& t : g.triples) targets[fill[index_of(t.src)]++] = index_of(t.dst);
  }

  enum : unsigned char { white, grey, black };
  std::vector<unsigned char> colour(nodes.size(), white);
  std::vector<std::size_t> parent(nodes.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // node, next edge
  for (std::size_t start = 0; start < nodes.size(); ++start) {
    if (colour[start] != white) continue;
    stack.emplace_back(start, offsets[start]);
    colour[start] = grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next == offsets[node + 1]) {
        colour[node] = black;
        stack.pop_back();
        continue;
      }
      std::size_t child = targets[next++];
      if (colour[child] == white) {
        colour[child] = grey;
        parent[child] = node;
        stack.emplace_back(child, offsets[child]);
      } else if (colour[child] == grey) {
        std::vector<DataItemId> cycle{nodes[child]};
        for (std::size_t at = node; at != child; at = parent[at]) cycle.push_back(nodes[at]);
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
    }
  }
  return {};
}

}  // namespace

std::vector<Violation> validate_graph(const ProvGraph& g) {
  std::vector<Violation> report;

  for (const auto& t : g.triples) {
    if (t.src == t.dst) {
      report.push_back({ViolationKind::self_loop, {t.src},
                        "self-loop " + describe(t) + " on item " + std::to_string(t.src.value)});
    }
  }

  std::vector<const ProvTriple*> order;
  order.reserve(g.triples.size());
  for (const auto& t : g.triples) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const ProvTriple* a, const ProvTriple* b) { return edge_key(*a) < edge_key(*b); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edge_key(*order[i]) == edge_key(*order[i - 1]) &&
        (i < 2 || edge_key(*order[i - 2]) != edge_key(*order[i]))) {
      report.push_back({ViolationKind::duplicate_triple, {order[i]->src, order[i]->dst},
                        "duplicate triple " + describe(*order[i])});
    }
  }

  std::vector<DataItemId> missing;
  for (const auto& t : g.triples) {
    for (auto id : {t.src, t.dst}) {
      if (!g.item_table.contains(id)) missing.push_back(id);
    }
  }
  std::sort(missing.begin(), missing.end());
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  for (auto id : missing) {
    report.push_back({ViolationKind::missing_item_table, {id},
                      "item " + std::to_string(id.value) + " has no table"});
  }

  // Self-loops are already reported; the cycle search ignores them.
  ProvGraph loop_free;
  loop_free.triples.reserve(g.triples.size());
  for (const auto& t : g.triples) {
    if (t.src != t.dst) loop_free.triples.push_back({t.src, t.dst, {}, {}});
  }
  if (auto cycle = find_cycle(loop_free); !cycle.empty()) {
    std::string path;
    for (auto id : cycle) path += std::to_string(id.value) + " -> ";
    path += std::to_string(cycle.front().value);
    report.push_back({ViolationKind::cycle, std::move(cycle), "cycle " + path});
  }
  return report;
}

}  // namespace lineagelab
