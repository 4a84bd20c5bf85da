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

#include <ostream>
#include <span>
#include <string_view>

#include "lineagelab/csv.hpp"
#include "lineagelab/model.hpp"

namespace lineagelab {

/// CSV encoding of a row type inside one store partition file.
template <class Row>
struct RowCodec;

template <>
struct RowCodec<ProvTriple> {
  static constexpr std::string_view name = "prov_triple";
  static constexpr std::string_view header = "src,dst,op,meta";
  static void write(std::ostream& os, const ProvTriple& row);
  static ProvTriple read(std::span<const std::string_view> fields, const CsvReader& at);
};

template <>
struct RowCodec<AnnotatedTriple> {
  static constexpr std::string_view name = "annotated_triple";
  static constexpr std::string_view header = "src,dst,op,src_csid,dst_csid,meta";
  static void write(std::ostream& os, const AnnotatedTriple& row);
  static AnnotatedTriple read(std::span<const std::string_view> fields, const CsvReader& at);
};

template <>
struct RowCodec<SetDependency> {
  static constexpr std::string_view name = "set_dependency";
  static constexpr std::string_view header = "src_csid,dst_csid";
  static void write(std::ostream& os, const SetDependency& row);
  static SetDependency read(std::span<const std::string_view> fields, const CsvReader& at);
};

template <>
struct RowCodec<ItemSetRow> {
  static constexpr std::string_view name = "item_set";
  static constexpr std::string_view header = "item,csid,ccid";
  static void write(std::ostream& os, const ItemSetRow& row);
  static ItemSetRow read(std::span<const std::string_view> fields, const CsvReader& at);
};

}  // namespace lineagelab
