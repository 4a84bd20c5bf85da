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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lineagelab/model.hpp"

namespace lineagelab {

/// Problems in a dependency graph or split hierarchy. Empty means the
/// config can drive partitioning.
std::vector<std::string> validate_workflow(const WorkflowConfig& config);

/// True when `tables` are weakly connected in the dependency graph
/// restricted to them. An empty list is not connected.
bool weakly_connected(const DependencyGraph& depgraph, std::span<const TableId> tables);

/// Splits `split` into two weakly connected halves by taking a prefix of
/// the BFS order over the undirected dependency graph. Picks the prefix
/// closest to half the tables. nullopt when no prefix leaves a connected
/// remainder or the split has fewer than two tables.
std::optional<std::pair<SplitNode, SplitNode>> suggest_bisection(const DependencyGraph& depgraph,
                                                                 const SplitNode& split);

/// Visits every node of the hierarchy, parents before children.
template <class F>
void for_each_split(std::span<const SplitNode> splits, F&& f) {
  for (const auto& s : splits) {
    f(s);
    for_each_split(std::span<const SplitNode>(s.children), f);
  }
}

}  // namespace lineagelab
