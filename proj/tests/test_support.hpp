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
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lineagelab/io.hpp"
#include "lineagelab/model.hpp"

namespace lineagelab::testing {

inline std::filesystem::path source_dir() { return LINEAGELAB_SOURCE_DIR; }
inline std::filesystem::path example_dir(const std::string& name) { return source_dir() / "data" / "examples" / name; }

inline ProvGraph load_example(const std::string& name) {
  auto dir = example_dir(name);
  return read_graph(dir / "triples.csv", dir / "items.csv");
}

inline WorkflowConfig load_example_workflow(const std::string& name) {
  return read_workflow(example_dir(name) / "workflow.json");
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("lineagelab-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Random DAG over items 1..n: edges only go from lower to higher ids.
inline ProvGraph random_dag(std::uint32_t n, double edge_prob, std::uint32_t seed, std::uint32_t window = 8) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  ProvGraph g;
  for (std::uint32_t dst = 1; dst <= n; ++dst) {
    g.item_table.emplace(DataItemId(dst), "T" + std::to_string(dst % 3));
    for (std::uint32_t src = dst > window ? dst - window : 1; src < dst; ++src) {
      if (u(rng) < edge_prob) g.triples.push_back({DataItemId(src), DataItemId(dst), "op" + std::to_string(src % 2), {}});
    }
  }
  return g;
}

using TripleKey = std::tuple<std::uint64_t, std::uint64_t, std::string>;

inline std::set<TripleKey> key_set(const std::vector<ProvTriple>& triples) {
  std::set<TripleKey> out;
  for (const auto& t : triples) out.emplace(t.src.value, t.dst.value, t.op);
  return out;
}

/// Reverse reachability by repeated sweeps; independent of the library.
inline std::set<TripleKey> reference_lineage(const ProvGraph& g, std::uint64_t q) {
  std::set<std::uint64_t> reached{q};
  std::set<TripleKey> out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t : g.triples) {
      if (reached.count(t.dst.value) && out.emplace(t.src.value, t.dst.value, t.op).second) {
        reached.insert(t.src.value);
        changed = true;
      }
    }
  }
  return out;
}

/// Component label (minimum member) of every item, by flood fill.
inline std::map<std::uint64_t, std::uint64_t> reference_components(const ProvGraph& g) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> adj;
  for (const auto& [item, table] : g.item_table) adj[item.value];
  for (const auto& t : g.triples) {
    adj[t.src.value].push_back(t.dst.value);
    adj[t.dst.value].push_back(t.src.value);
  }
  std::map<std::uint64_t, std::uint64_t> label;
  for (const auto& [start, unused] : adj) {
    if (label.count(start)) continue;
    std::vector<std::uint64_t> stack{start};
    label[start] = start;  // map iteration is ascending, so start is the minimum
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v]) {
        if (label.emplace(w, start).second) stack.push_back(w);
      }
    }
  }
  return label;
}

}  // namespace lineagelab::testing
