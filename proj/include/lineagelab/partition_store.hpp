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
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lineagelab/csv.hpp"
#include "lineagelab/hash.hpp"
#include "lineagelab/model.hpp"
#include "lineagelab/parallel.hpp"
#include "lineagelab/row_codec.hpp"

namespace lineagelab {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class StorageTier { memory, disk };

struct ScanCost {
  std::uint64_t partitions = 0;
  std::uint64_t rows = 0;

  ScanCost& operator+=(const ScanCost& o) {
    partitions += o.partitions;
    rows += o.rows;
    return *this;
  }
  friend bool operator==(const ScanCost&, const ScanCost&) = default;
};

/// The column a store is hash-partitioned on.
template <class Row>
struct KeySelector {
  std::string_view name;
  std::uint64_t (*key)(const Row&);
};

inline constexpr KeySelector<ProvTriple> kTripleByDst{
    "dst", [](const ProvTriple& r) { return r.dst.value; }};
inline constexpr KeySelector<AnnotatedTriple> kAnnotatedByDst{
    "dst", [](const AnnotatedTriple& r) { return r.dst.value; }};
inline constexpr KeySelector<AnnotatedTriple> kAnnotatedByDstCsid{
    "dst_csid", [](const AnnotatedTriple& r) { return r.dst_csid.value; }};
inline constexpr KeySelector<SetDependency> kSetDepByDstCsid{
    "dst_csid", [](const SetDependency& r) { return r.dst_csid.value; }};
inline constexpr KeySelector<ItemSetRow> kItemSetByItem{
    "item", [](const ItemSetRow& r) { return r.item.value; }};

template <class Row>
struct Bucket {
  std::vector<std::uint64_t> keys;  // keys[i] is the partition key of rows[i]
  std::vector<Row> rows;
};

template <class Row>
struct Scan {
  std::vector<Row> rows;
  ScanCost cost;
};

namespace detail {

template <class Row>
class BucketSource {
 public:
  virtual ~BucketSource() = default;
  virtual std::shared_ptr<const Bucket<Row>> load(std::size_t i) const = 0;
  virtual std::uint64_t bucket_size(std::size_t i) const = 0;
  virtual StorageTier tier() const = 0;
};

template <class Row>
class MemoryBuckets final : public BucketSource<Row> {
 public:
  explicit MemoryBuckets(std::vector<std::shared_ptr<const Bucket<Row>>> buckets)
      : buckets_(std::move(buckets)) {}
  std::shared_ptr<const Bucket<Row>> load(std::size_t i) const override { return buckets_[i]; }
  std::uint64_t bucket_size(std::size_t i) const override { return buckets_[i]->rows.size(); }
  StorageTier tier() const override { return StorageTier::memory; }

 private:
  std::vector<std::shared_ptr<const Bucket<Row>>> buckets_;
};

// Re-reads and parses the partition file on every load.
template <class Row>
class DiskBuckets final : public BucketSource<Row> {
 public:
  DiskBuckets(std::filesystem::path dir, std::vector<std::uint64_t> sizes, KeySelector<Row> key)
      : dir_(std::move(dir)), sizes_(std::move(sizes)), key_(key) {}

  std::shared_ptr<const Bucket<Row>> load(std::size_t i) const override {
    auto path = dir_ / ("part-" + std::to_string(i) + ".csv");
    auto data = read_file(path);
    CsvReader reader(data, path.string());
    reader.expect_header(RowCodec<Row>::header);
    auto bucket = std::make_shared<Bucket<Row>>();
    bucket->rows.reserve(sizes_[i]);
    bucket->keys.reserve(sizes_[i]);
    std::vector<std::string_view> fields;
    while (reader.next(fields)) {
      auto row = RowCodec<Row>::read(fields, reader);
      bucket->keys.push_back(key_.key(row));
      bucket->rows.push_back(std::move(row));
    }
    if (bucket->rows.size() != sizes_[i]) reader.fail("row count disagrees with manifest.json");
    return bucket;
  }
  std::uint64_t bucket_size(std::size_t i) const override { return sizes_[i]; }
  StorageTier tier() const override { return StorageTier::disk; }

 private:
  std::filesystem::path dir_;
  std::vector<std::uint64_t> sizes_;
  KeySelector<Row> key_;
};

}  // namespace detail

/// Hash-partitioned, immutable row container with scan accounting. Every
/// row lives in bucket `partition_of(key(row), P)`. Scans charge whole
/// buckets: a lookup costs one partition and all of its rows regardless of
/// how many rows match. Copies share rows and cumulative counters.
template <class Row>
class PartitionedStore {
 public:
  static PartitionedStore build(std::vector<Row> rows, KeySelector<Row> key, std::size_t num_partitions) {
    if (num_partitions == 0) throw ConfigError("partition count must be at least 1");
    std::vector<Bucket<Row>> buckets(num_partitions);
    for (auto& row : rows) {
      auto k = key.key(row);
      auto& b = buckets[partition_of(k, num_partitions)];
      b.keys.push_back(k);
      b.rows.push_back(std::move(row));
    }
    return from_buckets(std::move(buckets), key);
  }

  /// Opens a store directory written by persist().
  static PartitionedStore open(const std::filesystem::path& dir, KeySelector<Row> key) {
    auto manifest_path = dir / "manifest.json";
    auto manifest = nlohmann::json::parse(read_file(manifest_path), nullptr, false);
    if (manifest.is_discarded()) throw FormatError(manifest_path.string() + ": not valid JSON");
    try {
      if (manifest.at("key_selector").get<std::string>() != key.name ||
          manifest.at("row_type").get<std::string>() != RowCodec<Row>::name) {
        throw ConfigError(manifest_path.string() + ": store holds " +
                          manifest.at("row_type").get<std::string>() + " keyed on " +
                          manifest.at("key_selector").get<std::string>());
      }
      if (manifest.at("hash").get<std::string>() != kPartitionHashName) {
        throw ConfigError(manifest_path.string() + ": unsupported hash " + manifest.at("hash").get<std::string>());
      }
      auto sizes = manifest.at("row_counts").get<std::vector<std::uint64_t>>();
      if (sizes.size() != manifest.at("partitions").get<std::size_t>() || sizes.empty()) {
        throw FormatError(manifest_path.string() + ": row_counts length disagrees with partitions");
      }
      PartitionedStore store;
      store.key_ = key;
      store.num_partitions_ = sizes.size();
      for (auto s : sizes) store.size_ += s;
      store.source_ = std::make_shared<detail::DiskBuckets<Row>>(dir, std::move(sizes), key);
      return store;
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(manifest_path.string() + ": " + e.what());
    }
  }

  /// Writes one `part-<i>.csv` per bucket plus `manifest.json` into `dir`
  /// and returns the disk-tier store over it.
  PartitionedStore persist(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    std::vector<std::uint64_t> sizes(num_partitions_);
    for (std::size_t i = 0; i < num_partitions_; ++i) {
      auto bucket = source_->load(i);
      sizes[i] = bucket->rows.size();
      std::ofstream out(dir / ("part-" + std::to_string(i) + ".csv"), std::ios::binary);
      out << RowCodec<Row>::header << '\n';
      for (const auto& row : bucket->rows) {
        RowCodec<Row>::write(out, row);
        out << '\n';
      }
      if (!out) throw std::runtime_error("failed writing partition " + std::to_string(i) + " in " + dir.string());
    }
    nlohmann::json manifest = {
        {"partitions", num_partitions_}, {"key_selector", key_.name}, {"hash", kPartitionHashName},
        {"row_type", RowCodec<Row>::name}, {"row_counts", sizes},     {"rows", size_},
    };
    std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
    return open(dir, key_);
  }

  Scan<Row> lookup(std::uint64_t key) const { return multi_lookup(std::span<const std::uint64_t>(&key, 1)); }

  /// Rows whose key is in `keys`. Each distinct bucket hit is scanned once.
  Scan<Row> multi_lookup(std::span<const std::uint64_t> keys, ExecPolicy policy = ExecPolicy::parallel) const {
    std::vector<std::pair<std::size_t, std::uint64_t>> wanted;
    wanted.reserve(keys.size());
    for (auto k : keys) wanted.emplace_back(partition_of(k, num_partitions_), k);
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) into wanted
    for (std::size_t i = 0; i < wanted.size();) {
      std::size_t j = i;
      while (j < wanted.size() && wanted[j].first == wanted[i].first) ++j;
      groups.emplace_back(i, j);
      i = j;
    }

    std::vector<std::vector<Row>> found(groups.size());
    std::vector<std::uint64_t> scanned(groups.size(), 0);
    parallel_for(groups.size(), policy, [&](std::size_t g) {
      auto [begin, end] = groups[g];
      auto bucket = source_->load(wanted[begin].first);
      scanned[g] = bucket->rows.size();
      auto first = wanted.begin() + static_cast<std::ptrdiff_t>(begin);
      auto last = wanted.begin() + static_cast<std::ptrdiff_t>(end);
      const std::size_t b = wanted[begin].first;
      for (std::size_t r = 0; r < bucket->rows.size(); ++r) {
        if (std::binary_search(first, last, std::pair{b, bucket->keys[r]})) found[g].push_back(bucket->rows[r]);
      }
    });

    Scan<Row> out;
    out.cost.partitions = groups.size();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      out.cost.rows += scanned[g];
      std::move(found[g].begin(), found[g].end(), std::back_inserter(out.rows));
    }
    charge(out.cost);
    return out;
  }

  /// Full scan of every partition.
  template <class Pred>
  Scan<Row> filter(Pred&& pred, ExecPolicy policy = ExecPolicy::parallel) const {
    auto per_bucket = filter_buckets(pred, policy);
    Scan<Row> out;
    out.cost = {num_partitions_, size_};
    for (auto& b : per_bucket) std::move(b.rows.begin(), b.rows.end(), std::back_inserter(out.rows));
    charge(out.cost);
    return out;
  }

  /// Full scan producing a memory-tier store that keeps this store's key and
  /// bucket assignment, minus the rows failing `pred`.
  template <class Pred>
  std::pair<PartitionedStore, ScanCost> restrict(Pred&& pred, ExecPolicy policy = ExecPolicy::parallel) const {
    auto per_bucket = filter_buckets(pred, policy);
    ScanCost cost{num_partitions_, size_};
    charge(cost);
    return {from_buckets(std::move(per_bucket), key_), cost};
  }

  std::size_t num_partitions() const { return num_partitions_; }
  std::uint64_t size() const { return size_; }
  std::string_view key_name() const { return key_.name; }
  KeySelector<Row> key_selector() const { return key_; }
  StorageTier tier() const { return source_->tier(); }
  std::uint64_t bucket_size(std::size_t i) const { return source_->bucket_size(i); }
  std::size_t bucket_of(std::uint64_t key) const { return partition_of(key, num_partitions_); }

  /// Bucket contents without scan accounting; for inspection and tests.
  std::shared_ptr<const Bucket<Row>> bucket(std::size_t i) const { return source_->load(i); }

  /// Cumulative scan cost over all copies of this store.
  ScanCost counters() const { return {counters_->partitions.load(), counters_->rows.load()}; }
  void reset_counters() const {
    counters_->partitions = 0;
    counters_->rows = 0;
  }

 private:
  struct Counters {
    std::atomic<std::uint64_t> partitions{0};
    std::atomic<std::uint64_t> rows{0};
  };

  PartitionedStore() : counters_(std::make_shared<Counters>()) {}

  static PartitionedStore from_buckets(std::vector<Bucket<Row>> buckets, KeySelector<Row> key) {
    PartitionedStore store;
    store.key_ = key;
    store.num_partitions_ = buckets.size();
    std::vector<std::shared_ptr<const Bucket<Row>>> shared;
    shared.reserve(buckets.size());
    for (auto& b : buckets) {
      store.size_ += b.rows.size();
      shared.push_back(std::make_shared<const Bucket<Row>>(std::move(b)));
    }
    store.source_ = std::make_shared<detail::MemoryBuckets<Row>>(std::move(shared));
    return store;
  }

  template <class Pred>
  std::vector<Bucket<Row>> filter_buckets(Pred& pred, ExecPolicy policy) const {
    std::vector<Bucket<Row>> out(num_partitions_);
    parallel_for(num_partitions_, policy, [&](std::size_t i) {
      auto bucket = source_->load(i);
      for (std::size_t r = 0; r < bucket->rows.size(); ++r) {
        if (pred(bucket->rows[r])) {
          out[i].keys.push_back(bucket->keys[r]);
          out[i].rows.push_back(bucket->rows[r]);
        }
      }
    });
    return out;
  }

  void charge(const ScanCost& cost) const {
    counters_->partitions += cost.partitions;
    counters_->rows += cost.rows;
  }

  std::shared_ptr<const detail::BucketSource<Row>> source_;
  KeySelector<Row> key_{};
  std::size_t num_partitions_ = 0;
  std::uint64_t size_ = 0;
  std::shared_ptr<Counters> counters_;
};

}  // namespace lineagelab
