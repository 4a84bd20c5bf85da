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

#include "lineagelab/io.hpp"

#include <algorithm>

#include "json.hpp"
#include "lineagelab/csv.hpp"
#include "lineagelab/row_codec.hpp"

namespace lineagelab {

namespace {

using Fields = std::span<const std::string_view>;

void expect_columns(Fields f, std::size_t n, const CsvReader& at) {
  if (f.size() != n) {
    at.fail("expected " + std::to_string(n) + " columns, found " + std::to_string(f.size()));
  }
}

template <class Row, class Parse>
std::vector<Row> read_rows(const fs::path& path, std::string_view header, Parse&& parse) {
  auto data = read_file(path);
  CsvReader reader(data, path.string());
  reader.expect_header(header);
  std::vector<Row> rows;
  std::vector<std::string_view> fields;
  while (reader.next(fields)) rows.push_back(parse(Fields(fields), reader));
  return rows;
}

}  // namespace

void RowCodec<ProvTriple>::write(std::ostream& os, const ProvTriple& t) {
  os << t.src.value << ',' << t.dst.value << ',';
  write_csv_field(os, t.op);
  os << ',';
  write_csv_field(os, t.meta);
}

ProvTriple RowCodec<ProvTriple>::read(Fields f, const CsvReader& at) {
  expect_columns(f, 4, at);
  return {DataItemId(at.parse_u64(f[0], "src")), DataItemId(at.parse_u64(f[1], "dst")), std::string(f[2]),
          std::string(f[3])};
}

void RowCodec<AnnotatedTriple>::write(std::ostream& os, const AnnotatedTriple& t) {
  os << t.src.value << ',' << t.dst.value << ',';
  write_csv_field(os, t.op);
  os << ',' << t.src_csid.value << ',' << t.dst_csid.value << ',';
  write_csv_field(os, t.meta);
}

AnnotatedTriple RowCodec<AnnotatedTriple>::read(Fields f, const CsvReader& at) {
  expect_columns(f, 6, at);
  return {DataItemId(at.parse_u64(f[0], "src")), DataItemId(at.parse_u64(f[1], "dst")), std::string(f[2]),
          SetId(at.parse_u64(f[3], "src_csid")),  SetId(at.parse_u64(f[4], "dst_csid")),  std::string(f[5])};
}

void RowCodec<SetDependency>::write(std::ostream& os, const SetDependency& d) {
  os << d.src_csid.value << ',' << d.dst_csid.value;
}

SetDependency RowCodec<SetDependency>::read(Fields f, const CsvReader& at) {
  expect_columns(f, 2, at);
  return {SetId(at.parse_u64(f[0], "src_csid")), SetId(at.parse_u64(f[1], "dst_csid"))};
}

void RowCodec<ItemSetRow>::write(std::ostream& os, const ItemSetRow& r) {
  os << r.item.value << ',' << r.csid.value << ',' << r.ccid.value;
}

ItemSetRow RowCodec<ItemSetRow>::read(Fields f, const CsvReader& at) {
  expect_columns(f, 3, at);
  return {DataItemId(at.parse_u64(f[0], "item")), SetId(at.parse_u64(f[1], "csid")),
          ComponentId(at.parse_u64(f[2], "ccid"))};
}

std::vector<ProvTriple> read_triples(const fs::path& path) {
  return read_rows<ProvTriple>(path, kTriplesHeader, &RowCodec<ProvTriple>::read);
}

void write_triples(std::ostream& os, std::span<const ProvTriple> triples) {
  os << kTriplesHeader << '\n';
  for (const auto& t : triples) {
    RowCodec<ProvTriple>::write(os, t);
    os << '\n';
  }
}

std::unordered_map<DataItemId, TableId> read_item_table(const fs::path& path) {
  auto rows = read_rows<std::pair<DataItemId, TableId>>(path, kItemTableHeader, [](Fields f, const CsvReader& at) {
    expect_columns(f, 2, at);
    if (f[1].empty()) at.fail("empty table name");
    return std::pair{DataItemId(at.parse_u64(f[0], "item")), TableId(f[1])};
  });
  std::unordered_map<DataItemId, TableId> out;
  out.reserve(rows.size());
  for (auto& [item, table] : rows) {
    auto [it, inserted] = out.try_emplace(item, std::move(table));
    if (!inserted && it->second != table) {
      throw FormatError(path.string() + ": item " + std::to_string(item.value) + " mapped to two tables");
    }
  }
  return out;
}

void write_item_table(std::ostream& os, const std::unordered_map<DataItemId, TableId>& items) {
  std::vector<std::pair<DataItemId, const TableId*>> sorted;
  sorted.reserve(items.size());
  for (const auto& [item, table] : items) sorted.emplace_back(item, &table);
  std::sort(sorted.begin(), sorted.end());
  os << kItemTableHeader << '\n';
  for (const auto& [item, table] : sorted) {
    os << item.value << ',';
    write_csv_field(os, *table);
    os << '\n';
  }
}

ProvGraph read_graph(const fs::path& triples, const fs::path& item_table) {
  return {read_triples(triples), read_item_table(item_table)};
}

std::vector<AnnotatedTriple> read_annotated(const fs::path& path) {
  return read_rows<AnnotatedTriple>(path, kAnnotatedHeader, [](Fields f, const CsvReader& at) {
    expect_columns(f, 5, at);
    return AnnotatedTriple{DataItemId(at.parse_u64(f[0], "src")), DataItemId(at.parse_u64(f[1], "dst")),
                           std::string(f[2]), SetId(at.parse_u64(f[3], "src_csid")),
                           SetId(at.parse_u64(f[4], "dst_csid")), {}};
  });
}

void write_annotated(std::ostream& os, std::span<const AnnotatedTriple> triples) {
  os << kAnnotatedHeader << '\n';
  for (const auto& t : triples) {
    os << t.src.value << ',' << t.dst.value << ',';
    write_csv_field(os, t.op);
    os << ',' << t.src_csid.value << ',' << t.dst_csid.value << '\n';
  }
}

std::vector<SetDependency> read_set_dependencies(const fs::path& path) {
  return read_rows<SetDependency>(path, kSetDependencyHeader, &RowCodec<SetDependency>::read);
}

void write_set_dependencies(std::ostream& os, std::span<const SetDependency> deps) {
  os << kSetDependencyHeader << '\n';
  for (const auto& d : deps) {
    RowCodec<SetDependency>::write(os, d);
    os << '\n';
  }
}

std::vector<ItemSetRow> read_item_sets(const fs::path& path) {
  return read_rows<ItemSetRow>(path, kItemSetsHeader, &RowCodec<ItemSetRow>::read);
}

void write_item_sets(std::ostream& os, std::span<const ItemSetRow> rows) {
  os << kItemSetsHeader << '\n';
  for (const auto& r : rows) {
    RowCodec<ItemSetRow>::write(os, r);
    os << '\n';
  }
}

namespace {

SplitNode split_from_json(const nlohmann::json& j) {
  SplitNode node;
  node.id = j.at("id").get<std::string>();
  node.tables = j.at("tables").get<std::vector<TableId>>();
  if (j.contains("children")) {
    for (const auto& c : j.at("children")) node.children.push_back(split_from_json(c));
  }
  return node;
}

nlohmann::json split_to_json(const SplitNode& s) {
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : s.children) children.push_back(split_to_json(c));
  return {{"id", s.id}, {"tables", s.tables}, {"children", children}};
}

}  // namespace

WorkflowConfig parse_workflow(std::string_view json_text, const std::string& source) {
  auto j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw FormatError(source + ": not valid JSON");
  try {
    WorkflowConfig config;
    config.depgraph.tables = j.at("tables").get<std::vector<TableId>>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError(source + ": each edge must be [parent, child]");
      config.depgraph.edges.emplace_back(e[0].get<TableId>(), e[1].get<TableId>());
    }
    for (const auto& s : j.at("splits")) config.splits.push_back(split_from_json(s));
    if (j.contains("theta")) config.theta = j.at("theta").get<std::uint64_t>();
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(source + ": " + e.what());
  }
}

WorkflowConfig read_workflow(const fs::path& path) { return parse_workflow(read_file(path), path.string()); }

void write_workflow(std::ostream& os, const WorkflowConfig& config) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [p, c] : config.depgraph.edges) edges.push_back({p, c});
  nlohmann::json splits = nlohmann::json::array();
  for (const auto& s : config.splits) splits.push_back(split_to_json(s));
  nlohmann::json j = {{"tables", config.depgraph.tables}, {"edges", edges}, {"splits", splits}};
  if (config.theta != 0) j["theta"] = config.theta;
  os << j.dump(2) << '\n';
}

}  // namespace lineagelab
