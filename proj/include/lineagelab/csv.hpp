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
#include <deque>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lineagelab {

/// Malformed input file. The message carries `source:line`.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing input file or directory.
class MissingArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);

/// RFC 4180 reader over an in-memory buffer. Unquoted fields are views into
/// the buffer; quoted fields are unescaped into reader-owned storage that
/// stays valid until the next call to next().
class CsvReader {
 public:
  CsvReader(std::string_view data, std::string source);

  /// Reads one record. Returns false at end of input.
  bool next(std::vector<std::string_view>& fields);

  /// Reads the header row and fails unless it equals `expected`.
  void expect_header(std::string_view expected);

  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }

  [[noreturn]] void fail(const std::string& what) const;

  std::uint64_t parse_u64(std::string_view field, std::string_view column) const;

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
  std::string source_;
  std::deque<std::string> unescaped_;
};

void write_csv_field(std::ostream& os, std::string_view field);

}  // namespace lineagelab
