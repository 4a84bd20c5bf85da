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
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lineagelab/model.hpp"

namespace lineagelab {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fan-in k in [min, max] is drawn with weight decay^(k - min).
struct FanInBand {
  std::uint32_t min = 1;
  std::uint32_t max = 1;
  double probability = 1.0;
  double decay = 1.0;
};

/// A family of `count` disjoint item groups sharing row and cluster counts.
/// Each group ends up as one weakly connected component (plus any source
/// items nobody derives from). An item of a table with C clusters lies in
/// one contiguous cluster; its parents come from the matching clusters of
/// the parent tables, which keeps lineage local.
struct GroupProfile {
  std::string name;
  std::uint32_t count = 1;
  std::map<TableId, std::uint64_t> rows;      // absent: 0 rows
  std::map<TableId, std::uint64_t> clusters;  // absent: 1 cluster
  /// When scaling: true scales rows and clusters, false scales count.
  bool scale_rows = true;
};

struct WorkflowSpec {
  DependencyGraph depgraph;
  std::vector<SplitNode> splits;  // shipped with the output dataset
  std::vector<FanInBand> fan_in;  // default for every derived table
  std::map<TableId, std::vector<FanInBand>> table_fan_in;
  std::vector<GroupProfile> groups;
  std::uint64_t seed = 1;
};

/// 25-table document curation workflow with three root splits, the
/// third split in two. scale 1.0 gives roughly a million triples.
WorkflowSpec default_workflow_spec(double scale = 1.0);

WorkflowSpec parse_workflow_spec(std::string_view json_text, const std::string& source);
nlohmann::json workflow_spec_json(const WorkflowSpec& spec);

/// Throws GenerationError when band probabilities do not sum to 1, the
/// dependency graph has a cycle, or a table with rows has no upstream rows.
void check_spec(const WorkflowSpec& spec);

/// Deterministic for a given spec. Table t draws from PCG32 stream t, so
/// tables may be generated concurrently without changing the output.
ProvGraph generate(const WorkflowSpec& spec);

/// k disjoint copies; copy i adds i * (max id + 1) to every id.
ProvGraph replicate(const ProvGraph& g, std::uint32_t k);

/// Share of derived items whose fan-in falls in each band.
std::vector<double> fan_in_census(const ProvGraph& g, std::span<const FanInBand> bands);

}  // namespace lineagelab
