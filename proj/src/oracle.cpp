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

#include "lineagelab/oracle.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

namespace lineagelab {

LineageOracle::LineageOracle(std::span<const ProvTriple> triples) {
  parents_.reserve(triples.size());
  for (const auto& t : triples) parents_.push_back(&t);
  std::sort(parents_.begin(), parents_.end(), [](const ProvTriple* a, const ProvTriple* b) {
    return std::tie(a->dst, a->src, a->op) < std::tie(b->dst, b->src, b->op);
  });
  for (std::size_t i = 0; i < parents_.size(); ++i) {
    if (i == 0 || parents_[i]->dst != parents_[i - 1]->dst) {
      dsts_.push_back(parents_[i]->dst);
      offsets_.push_back(i);
    }
  }
  offsets_.push_back(parents_.size());
}

namespace {

template <class Visit>
void bfs(const std::vector<DataItemId>& dsts, const std::vector<std::size_t>& offsets,
         const std::vector<const ProvTriple*>& parents, DataItemId q, Visit&& visit) {
  std::unordered_map<std::uint64_t, std::uint32_t> depth{{q.value, 0}};
  std::vector<DataItemId> queue{q};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto item = queue[head];
    auto it = std::lower_bound(dsts.begin(), dsts.end(), item);
    if (it == dsts.end() || *it != item) continue;
    auto k = static_cast<std::size_t>(it - dsts.begin());
    auto d = depth[item.value];
    for (auto i = offsets[k]; i < offsets[k + 1]; ++i) {
      const auto* t = parents[i];
      visit(*t, d);
      if (depth.try_emplace(t->src.value, d + 1).second) queue.push_back(t->src);
    }
  }
}

}  // namespace

LineageResult LineageOracle::lineage(DataItemId q) const {
  LineageResult r;
  r.root = q;
  bfs(dsts_, offsets_, parents_, q, [&](const ProvTriple& t, std::uint32_t d) {
    r.triples.push_back(t);
    r.distances.push_back(d);
  });
  order_for_display(r);
  return r;
}

LineageOracle::Census LineageOracle::census(DataItemId q) const {
  Census c;
  std::unordered_map<std::uint64_t, bool> seen;
  bfs(dsts_, offsets_, parents_, q, [&](const ProvTriple& t, std::uint32_t d) {
    ++c.triples;
    c.depth = std::max(c.depth, d + 1);
    if (t.src != q && seen.try_emplace(t.src.value, true).second) ++c.ancestors;
  });
  return c;
}

LineageResult oracle_lineage(const ProvGraph& g, DataItemId q) { return LineageOracle(g.triples).lineage(q); }

}  // namespace lineagelab
