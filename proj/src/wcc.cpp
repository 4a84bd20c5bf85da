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

#include "lineagelab/wcc.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>

#include "lineagelab/parallel.hpp"

namespace lineagelab {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) x = std::exchange(parent_[x], root);
  return root;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  return true;
}

ComponentLabeling::ComponentLabeling(std::vector<DataItemId> items, std::vector<ComponentId> labels)
    : items_(std::move(items)), labels_(std::move(labels)) {
  std::vector<ComponentId> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    sizes_.emplace_back(sorted[i], j - i);
    i = j;
  }
}

std::optional<ComponentId> ComponentLabeling::find(DataItemId item) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it == items_.end() || *it != item) return std::nullopt;
  return labels_[static_cast<std::size_t>(it - items_.begin())];
}

std::uint64_t ComponentLabeling::component_size(ComponentId c) const {
  auto it = std::lower_bound(sizes_.begin(), sizes_.end(), c,
                             [](const auto& entry, ComponentId v) { return entry.first < v; });
  return it != sizes_.end() && it->first == c ? it->second : 0;
}

namespace {

constexpr std::size_t kChunk = 1 << 14;

template <class Body>
void for_chunks(std::size_t n, ExecPolicy policy, Body&& body) {
  std::size_t chunks = (n + kChunk - 1) / kChunk;
  parallel_for(chunks, policy, [&](std::size_t c) {
    std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) body(i);
  });
}

std::vector<ComponentId> label_serial(std::span<const DataItemId> ids,
                                      std::span<const std::pair<std::size_t, std::size_t>> edges) {
  DisjointSets sets(ids.size());
  for (auto [a, b] : edges) sets.unite(a, b);
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> min_member(ids.size(), unset);
  std::vector<ComponentId> labels(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto r = sets.find(i);
    if (min_member[r] == unset) min_member[r] = i;  // ids ascend, so the first hit is the minimum
    labels[i] = ComponentId(ids[min_member[r]].value);
  }
  return labels;
}

// Concurrent union-find. Every link points from a larger index to a smaller
// one, so parent[x] <= x always holds and each root is its set's minimum
// index. Path halving only ever replaces a parent by one of its ancestors.
class ConcurrentForest {
 public:
  explicit ConcurrentForest(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i].store(i, std::memory_order_relaxed);
  }

  std::size_t find(std::size_t x) {
    while (true) {
      std::size_t p = parent_[x].load(std::memory_order_acquire);
      if (p == x) return x;
      std::size_t gp = parent_[p].load(std::memory_order_acquire);
      if (gp != p) parent_[x].compare_exchange_weak(p, gp, std::memory_order_acq_rel);
      x = gp;
    }
  }

  void unite(std::size_t a, std::size_t b) {
    while (true) {
      a = find(a);
      b = find(b);
      if (a == b) return;
      if (a < b) std::swap(a, b);
      std::size_t expected = a;
      if (parent_[a].compare_exchange_strong(expected, b, std::memory_order_acq_rel)) return;
    }
  }

 private:
  std::vector<std::atomic<std::size_t>> parent_;
};

std::vector<ComponentId> label_parallel(std::span<const DataItemId> ids,
                                        std::span<const std::pair<std::size_t, std::size_t>> edges) {
  ConcurrentForest forest(ids.size());
  for_chunks(edges.size(), ExecPolicy::parallel, [&](std::size_t i) { forest.unite(edges[i].first, edges[i].second); });
  std::vector<ComponentId> labels(ids.size());
  for_chunks(ids.size(), ExecPolicy::parallel, [&](std::size_t i) { labels[i] = ComponentId(ids[forest.find(i)].value); });
  return labels;
}

}  // namespace

ComponentLabeling compute_wcc(std::span<const Edge> edges, std::span<const DataItemId> extra_items,
                              ExecPolicy policy) {
  std::vector<DataItemId> ids;
  ids.reserve(edges.size() * 2 + extra_items.size());
  for (const auto& e : edges) {
    ids.push_back(e.src);
    ids.push_back(e.dst);
  }
  ids.insert(ids.end(), extra_items.begin(), extra_items.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto index_of = [&](DataItemId id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> dense(edges.size());
  for_chunks(edges.size(), policy,
             [&](std::size_t i) { dense[i] = {index_of(edges[i].src), index_of(edges[i].dst)}; });

  auto labels = policy == ExecPolicy::parallel ? label_parallel(ids, dense) : label_serial(ids, dense);
  return ComponentLabeling(std::move(ids), std::move(labels));
}

ComponentLabeling compute_wcc(const ProvGraph& g, ExecPolicy policy) {
  std::vector<DataItemId> extra;
  extra.reserve(g.item_table.size());
  for (const auto& [item, table] : g.item_table) extra.push_back(item);
  auto edges = edges_of(g);
  return compute_wcc(edges, extra, policy);
}

ComponentLabeling induced_wcc(std::span<const Edge> edges, std::span<const DataItemId> items) {
  std::vector<DataItemId> members(items.begin(), items.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto inside = [&](DataItemId id) { return std::binary_search(members.begin(), members.end(), id); };
  std::vector<Edge> induced;
  for (const auto& e : edges) {
    if (inside(e.src) && inside(e.dst)) induced.push_back(e);
  }
  return compute_wcc(induced, members, ExecPolicy::serial);
}

ComponentLabeling induced_wcc(const ProvGraph& g, std::span<const DataItemId> items) {
  auto edges = edges_of(g);
  return induced_wcc(edges, items);
}

}  // namespace lineagelab
