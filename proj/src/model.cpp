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

#include "lineagelab/model.hpp"

#include <algorithm>
#include <numeric>

namespace lineagelab {

std::vector<DataItemId> ProvGraph::items() const {
  std::vector<DataItemId> out;
  out.reserve(triples.size() * 2 + item_table.size());
  for (const auto& t : triples) {
    out.push_back(t.src);
    out.push_back(t.dst);
  }
  for (const auto& [item, table] : item_table) out.push_back(item);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Edge> edges_of(const ProvGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.triples.size());
  for (const auto& t : g.triples) edges.push_back({t.src, t.dst});
  return edges;
}

std::size_t LineageResult::ancestor_count() const {
  std::vector<DataItemId> srcs;
  srcs.reserve(triples.size());
  for (const auto& t : triples) srcs.push_back(t.src);
  std::sort(srcs.begin(), srcs.end());
  return static_cast<std::size_t>(std::unique(srcs.begin(), srcs.end()) - srcs.begin());
}

namespace {

std::vector<const ProvTriple*> sorted_edges(const LineageResult& r) {
  std::vector<const ProvTriple*> v;
  v.reserve(r.triples.size());
  for (const auto& t : r.triples) v.push_back(&t);
  std::sort(v.begin(), v.end(),
            [](const ProvTriple* a, const ProvTriple* b) { return edge_key(*a) < edge_key(*b); });
  return v;
}

}  // namespace

bool same_triples(const LineageResult& a, const LineageResult& b) {
  if (a.triples.size() != b.triples.size()) return false;
  auto sa = sorted_edges(a);
  auto sb = sorted_edges(b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (edge_key(*sa[i]) != edge_key(*sb[i])) return false;
  }
  return true;
}

void order_for_display(LineageResult& result) {
  std::vector<std::size_t> idx(result.triples.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (result.distances.size() != result.triples.size()) result.distances.assign(idx.size(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& ta = result.triples[a];
    const auto& tb = result.triples[b];
    return std::tie(result.distances[a], ta.src, ta.dst, ta.op) <
           std::tie(result.distances[b], tb.src, tb.dst, tb.op);
  });
  std::vector<ProvTriple> triples;
  std::vector<std::uint32_t> distances;
  triples.reserve(idx.size());
  distances.reserve(idx.size());
  for (auto i : idx) {
    triples.push_back(std::move(result.triples[i]));
    distances.push_back(result.distances[i]);
  }
  result.triples = std::move(triples);
  result.distances = std::move(distances);
}

}  // namespace lineagelab
