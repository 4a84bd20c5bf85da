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

#include <filesystem>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

#include "lineagelab/model.hpp"

namespace lineagelab {

namespace fs = std::filesystem;

// Headers of the on-disk dataset and artifact files.
inline constexpr std::string_view kTriplesHeader = "src,dst,op,meta";
inline constexpr std::string_view kItemTableHeader = "item,table";
inline constexpr std::string_view kAnnotatedHeader = "src,dst,op,src_csid,dst_csid";
inline constexpr std::string_view kSetDependencyHeader = "src_csid,dst_csid";
inline constexpr std::string_view kLabelingHeader = "item,ccid";
inline constexpr std::string_view kItemSetsHeader = "item,csid,ccid";

std::vector<ProvTriple> read_triples(const fs::path& path);
void write_triples(std::ostream& os, std::span<const ProvTriple> triples);

std::unordered_map<DataItemId, TableId> read_item_table(const fs::path& path);
/// Rows are written in ascending item order.
void write_item_table(std::ostream& os, const std::unordered_map<DataItemId, TableId>& items);

ProvGraph read_graph(const fs::path& triples, const fs::path& item_table);

/// Annotated triples drop `meta`; it is not part of the file layout.
std::vector<AnnotatedTriple> read_annotated(const fs::path& path);
void write_annotated(std::ostream& os, std::span<const AnnotatedTriple> triples);

std::vector<SetDependency> read_set_dependencies(const fs::path& path);
void write_set_dependencies(std::ostream& os, std::span<const SetDependency> deps);

std::vector<ItemSetRow> read_item_sets(const fs::path& path);
void write_item_sets(std::ostream& os, std::span<const ItemSetRow> rows);

WorkflowConfig read_workflow(const fs::path& path);
WorkflowConfig parse_workflow(std::string_view json_text, const std::string& source);
void write_workflow(std::ostream& os, const WorkflowConfig& config);

/// Writes `write(stream)` to `path`, creating parent directories.
template <class F>
void write_to(const fs::path& path, F&& write);

}  // namespace lineagelab

#include <fstream>
#include <stdexcept>

template <class F>
void lineagelab::write_to(const fs::path& path, F&& write) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}
