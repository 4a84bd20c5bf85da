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

#include "lineagelab/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lineagelab {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingArtifactError("cannot open " + path.string());
  std::string data;
  in.seekg(0, std::ios::end);
  data.resize(static_cast<std::size_t>(in.tellg()));
  in.seekg(0);
  in.read(data.data(), static_cast<std::streamsize>(data.size()));
  return data;
}

CsvReader::CsvReader(std::string_view data, std::string source)
    : data_(data), source_(std::move(source)) {}

void CsvReader::fail(const std::string& what) const {
  throw FormatError(source_ + ":" + std::to_string(line_) + ": " + what);
}

bool CsvReader::next(std::vector<std::string_view>& fields) {
  fields.clear();
  unescaped_.clear();
  if (pos_ >= data_.size()) return false;
  ++line_;
  while (true) {
    if (pos_ < data_.size() && data_[pos_] == '"') {
      std::string value;
      ++pos_;
      while (true) {
        if (pos_ >= data_.size()) fail("unterminated quoted field");
        char c = data_[pos_++];
        if (c == '"') {
          if (pos_ < data_.size() && data_[pos_] == '"') {
            value.push_back('"');
            ++pos_;
          } else {
            break;
          }
        } else {
          if (c == '\n') ++line_;
          value.push_back(c);
        }
      }
      fields.push_back(unescaped_.emplace_back(std::move(value)));
      if (pos_ >= data_.size()) return true;
      char c = data_[pos_++];
      if (c == '\n') return true;
      if (c != ',') fail("unexpected character after quoted field");
      continue;
    }
    std::size_t end = data_.find_first_of(",\n", pos_);
    if (end == std::string_view::npos) end = data_.size();
    std::string_view field = data_.substr(pos_, end - pos_);
    if (!field.empty() && field.back() == '\r') fail("CRLF line endings are not accepted");
    fields.push_back(field);
    pos_ = end;
    if (pos_ >= data_.size()) return true;
    if (data_[pos_++] == '\n') return true;
  }
}

void CsvReader::expect_header(std::string_view expected) {
  std::vector<std::string_view> fields;
  if (!next(fields)) fail("missing header row, expected '" + std::string(expected) + "'");
  std::string got;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) got += ',';
    got += fields[i];
  }
  if (got != expected) fail("header '" + got + "' does not match '" + std::string(expected) + "'");
}

std::uint64_t CsvReader::parse_u64(std::string_view field, std::string_view column) const {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    fail("column '" + std::string(column) + "': '" + std::string(field) + "' is not an unsigned integer");
  }
  return v;
}

void write_csv_field(std::ostream& os, std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    os << field;
    return;
  }
  os << '"';
  for (char c : field) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

}  // namespace lineagelab
