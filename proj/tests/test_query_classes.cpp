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

#include <gtest/gtest.h>

#include "lineagelab/generator.hpp"
#include "lineagelab/partitioner.hpp"
#include "lineagelab/query_classes.hpp"
#include "test_support.hpp"

namespace lineagelab {
namespace {

TEST(Summary, NearestRankPercentiles) {
  auto s = summarize({5, 1, 4, 2, 3, 6, 7, 8, 9, 10});
  EXPECT_DOUBLE_EQ(s.mean, 5.5);
  EXPECT_EQ(s.p50, 5u);
  EXPECT_EQ(s.p90, 9u);
  EXPECT_EQ(s.max, 10u);
  auto empty = summarize({});
  EXPECT_EQ(empty.max, 0u);
}

TEST(QueryClasses, Defaults) {
  auto classes = default_query_classes();
  ASSERT_EQ(classes.size(), 3u);
  EXPECT_EQ(classes[0].name, "SC-SL");
  EXPECT_FALSE(classes[0].large_component);
  EXPECT_EQ(classes[2].min_ancestors, 5000u);
  EXPECT_EQ(classes[2].max_ancestors, 10000u);
}

TEST(QueryClasses, NoLargeComponentsSkipsLcClasses) {
  auto g = testing::load_example("person");
  LineageOracle oracle(g.triples);
  auto labeling = compute_wcc(g);
  std::vector<DataItemId> candidates;
  for (const auto& t : g.triples) candidates.push_back(t.dst);
  std::vector<QueryClass> classes = {{"tiny", false, 1, 4}, {"LC", true, 1, 4}};
  auto samples = sample_query_classes(oracle, labeling, 25000, candidates, classes, {10, 1, 1000});
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_FALSE(samples[0].skipped());
  EXPECT_TRUE(samples[1].skipped());
  for (auto q : samples[0].items) {
    auto c = oracle.census(q);
    EXPECT_GE(c.ancestors, 1u);
    EXPECT_LE(c.ancestors, 4u);
  }
}

TEST(QueryClasses, SamplingIsSeeded) {
  auto g = testing::random_dag(2000, 0.05, 5, 30);
  LineageOracle oracle(g.triples);
  auto labeling = compute_wcc(g);
  auto items = g.items();
  std::vector<QueryClass> classes = {{"any", true, 5, 50}};
  auto a = sample_query_classes(oracle, labeling, 10, items, classes, {10, 3, 1000});
  auto b = sample_query_classes(oracle, labeling, 10, items, classes, {10, 3, 1000});
  auto c = sample_query_classes(oracle, labeling, 10, items, classes, {10, 4, 1000});
  EXPECT_EQ(a[0].items, b[0].items);
  EXPECT_EQ(a[0].items.size(), 10u);
  EXPECT_NE(a[0].items, c[0].items);
}

TEST(Bench, ReportHoldsOrderingOnGeneratedData) {
  auto spec = default_workflow_spec(0.05);
  auto g = generate(spec);
  auto labeling = compute_wcc(g);
  const std::uint64_t theta = 1000;
  auto catalog = build_catalog(g, labeling, {theta, spec.splits});
  auto annotated = annotate(g, catalog);
  auto inputs = build_inputs(annotated, extract_set_dependencies(annotated), catalog.item_rows(), 16);
  LineageOracle oracle(g.triples);
  std::vector<DataItemId> candidates;
  for (const auto& t : g.triples) candidates.push_back(t.dst);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<QueryClass> classes = {{"small", false, 10, 100}, {"large", true, 10, 100}, {"none", true, 1u << 30, 1u << 31}};
  auto samples = sample_query_classes(oracle, labeling, theta, candidates, classes, {5, 7, 5000});
  auto reports = run_bench(inputs, oracle, samples, 2);
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_FALSE(reports[1].sample.skipped());
  EXPECT_TRUE(reports[2].sample.skipped());
  EXPECT_TRUE(reports[2].strategies.empty());
  for (const auto& r : reports) {
    EXPECT_EQ(r.mismatches, 0u);
    EXPECT_EQ(r.order_violations, 0u);
  }
  auto j = bench_report_json(reports);
  ASSERT_EQ(j.at("classes").size(), 3u);
  EXPECT_TRUE(j["classes"][2]["skipped"].get<bool>());
  EXPECT_TRUE(j["classes"][1]["strategies"].contains("csprov"));
}

}  // namespace
}  // namespace lineagelab
