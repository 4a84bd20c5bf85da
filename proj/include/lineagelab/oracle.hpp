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

#include <cstdint>
#include <span>
#include <vector>

#include "lineagelab/model.hpp"

namespace lineagelab {

/// Ground-truth lineage from an in-memory reverse adjacency index. No
/// partitioning and no scan accounting.
class LineageOracle {
 public:
  explicit LineageOracle(std::span<const ProvTriple> triples);

  LineageResult lineage(DataItemId q) const;

  struct Census {
    std::uint64_t ancestors = 0;
    std::uint64_t triples = 0;
    std::uint32_t depth = 0;  // greatest BFS distance of an ancestor from q
  };
  /// Lineage sizes without materialising the triples.
  Census census(DataItemId q) const;

 private:
  std::vector<DataItemId> dsts_;         // sorted distinct dst ids
  std::vector<std::size_t> offsets_;     // into parents_, one range per dst
  std::vector<const ProvTriple*> parents_;
};

LineageResult oracle_lineage(const ProvGraph& g, DataItemId q);

}  // namespace lineagelab
