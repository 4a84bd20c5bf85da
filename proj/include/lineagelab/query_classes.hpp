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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lineagelab/oracle.hpp"
#include "lineagelab/query.hpp"
#include "lineagelab/wcc.hpp"

namespace lineagelab {

/// Items whose component is large (>= theta nodes) or small, with an
/// ancestor count in [min_ancestors, max_ancestors].
struct QueryClass {
  std::string name;
  bool large_component = false;
  std::uint64_t min_ancestors = 0;
  std::uint64_t max_ancestors = 0;
};

/// SC-SL, LC-SL and LC-LL.
std::vector<QueryClass> default_query_classes();

struct ClassSample {
  QueryClass cls;
  std::vector<DataItemId> items;
  std::uint64_t examined = 0;  // candidates censused
  bool skipped() const { return items.empty(); }
};

struct SamplingOptions {
  std::size_t per_class = 10;
  std::uint64_t seed = 1;
  /// Censuses spent per class before giving up.
  std::size_t budget = 200000;
};

/// Visits `candidates` in a seeded random order and keeps the first
/// `per_class` members of each class.
std::vector<ClassSample> sample_query_classes(const LineageOracle& oracle, const ComponentLabeling& labeling,
                                              std::uint64_t theta, std::span<const DataItemId> candidates,
                                              std::span<const QueryClass> classes, const SamplingOptions& options);

struct MetricSummary {
  double mean = 0;
  std::uint64_t p50 = 0;
  std::uint64_t p90 = 0;
  std::uint64_t max = 0;
};

/// Nearest-rank percentiles.
MetricSummary summarize(std::vector<std::uint64_t> values);

struct StrategySummary {
  Strategy strategy = Strategy::rq;
  MetricSummary rounds;
  MetricSummary partitions_scanned;
  MetricSummary rows_scanned;
  MetricSummary triples_recursed;
};

struct ClassReport {
  ClassSample sample;
  std::vector<StrategySummary> strategies;  // kAllStrategies order; empty when skipped
  std::uint64_t mismatches = 0;        // queries where a strategy disagreed with the oracle
  std::uint64_t order_violations = 0;  // queries breaking csprov <= ccprov <= rq
};

/// Runs every strategy on every sampled item, `jobs` queries at a time.
std::vector<ClassReport> run_bench(const StrategyInputs& inputs, const LineageOracle& oracle,
                                   std::span<const ClassSample> samples, unsigned jobs);

nlohmann::json bench_report_json(std::span<const ClassReport> reports);

}  // namespace lineagelab
