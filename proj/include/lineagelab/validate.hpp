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

#include <string>
#include <vector>

#include "lineagelab/model.hpp"

namespace lineagelab {

enum class ViolationKind {
  self_loop,
  duplicate_triple,
  missing_item_table,
  cycle,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<DataItemId> items;  // offending items; for a cycle, in path order
  std::string message;
};

/// Empty iff the graph is acyclic, loop-free, duplicate-free and every
/// endpoint has a table. Violations are data, never exceptions.
std::vector<Violation> validate_graph(const ProvGraph& g);

}  // namespace lineagelab
