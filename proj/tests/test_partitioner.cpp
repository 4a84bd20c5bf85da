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

#include <map>
#include <set>

#include "lineagelab/partitioner.hpp"
#include "test_support.hpp"

namespace lineagelab {
namespace {

struct Prepared {
  ProvGraph g;
  ComponentLabeling labeling;
  SetCatalog catalog;
};

Prepared prepare(const std::string& example, std::uint64_t theta, ExecPolicy policy = ExecPolicy::parallel) {
  Prepared p;
  p.g = testing::load_example(example);
  auto wf = testing::load_example_workflow(example);
  p.labeling = compute_wcc(p.g);
  p.catalog = build_catalog(p.g, p.labeling, {theta, wf.splits}, policy);
  return p;
}

// Expected sets up to SetId renaming: items of each listed set share one id.
TEST(Partitioner, ComponentCGolden) {
  auto p = prepare("component-c", 4);
  std::vector<std::vector<std::uint64_t>> expected = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {10, 11, 12}};
  ASSERT_EQ(p.catalog.num_sets(), 4u);
  std::set<std::uint64_t> ids;
  for (const auto& members : expected) {
    auto s = *p.catalog.set_of(DataItemId(members[0]));
    ids.insert(s.value);
    for (auto m : members) EXPECT_EQ(*p.catalog.set_of(DataItemId(m)), s) << "item " << m;
  }
  EXPECT_EQ(ids.size(), 4u);

  auto annotated = annotate(p.g, p.catalog);
  ASSERT_EQ(annotated.size(), 12u);
  for (const auto& a : annotated) {
    EXPECT_EQ(a.src_csid, *p.catalog.set_of(a.src));
    EXPECT_EQ(a.dst_csid, *p.catalog.set_of(a.dst));
  }
  auto deps = extract_set_dependencies(annotated);
  auto s = [&](std::uint64_t item) { return *p.catalog.set_of(DataItemId(item)); };
  std::vector<SetDependency> want = {{s(1), s(4)}, {s(4), s(7)}, {s(4), s(10)}};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(deps, want);
}

TEST(Partitioner, SetIdsDenseAndOrdered) {
  auto p = prepare("component-c", 4);
  for (std::size_t i = 1; i <= p.catalog.num_sets(); ++i) {
    const auto& info = p.catalog.info(SetId(i));
    if (i > 1) EXPECT_LT(p.catalog.info(SetId(i - 1)).min_item, info.min_item);
  }
  EXPECT_EQ(p.catalog.info(SetId(1)).min_item, DataItemId(1));
  EXPECT_EQ(p.catalog.info(SetId(4)).min_item, DataItemId(10));
}

TEST(Partitioner, BelowThetaComponentIsOneSet) {
  auto p = prepare("component-c", 25000);
  EXPECT_EQ(p.catalog.num_sets(), 1u);
  EXPECT_TRUE(p.catalog.partitioned().empty());
  auto deps = extract_set_dependencies(annotate(p.g, p.catalog));
  EXPECT_TRUE(deps.empty());
}

TEST(Partitioner, RepresentativeExampleSetsAreComponents) {
  auto p = prepare("person", 25000);
  EXPECT_EQ(p.catalog.num_sets(), 10u);
  for (std::size_t i = 1; i <= p.catalog.num_sets(); ++i) {
    EXPECT_EQ(p.catalog.info(SetId(i)).component.value, p.catalog.info(SetId(i)).min_item.value);
  }
}

TEST(Partitioner, StatsCountInducedComponentsPerSplit) {
  auto p = prepare("component-c", 4);
  ASSERT_EQ(p.catalog.partitioned().size(), 1u);
  const auto& pc = p.catalog.partitioned()[0];
  EXPECT_EQ(pc.nodes, 12u);
  EXPECT_EQ(pc.sets, 4u);
  std::map<std::string, SplitStats> by_id;
  for (const auto& s : pc.splits) by_id[s.split_id] = s;
  EXPECT_EQ(by_id.at("up").largest, 6u);
  EXPECT_EQ(by_id.at("up").sets, 1u);
  EXPECT_EQ(by_id.at("up.ab").depth, 1u);
  EXPECT_EQ(by_id.at("gh").largest, 3u);
}

TEST(Partitioner, OversizedLeafIsKeptWithWarning) {
  auto p = prepare("component-c", 3);
  // Every leaf set reaches theta.
  EXPECT_EQ(p.catalog.num_sets(), 4u);
  EXPECT_EQ(p.catalog.warnings().size(), 4u);
}

TEST(Partitioner, SingleSplitPlanGivesOneSetPerComponent) {
  auto g = testing::load_example("component-c");
  auto wf = testing::load_example_workflow("component-c");
  auto labeling = compute_wcc(g);
  SplitNode all{"all", wf.depgraph.tables, {}};
  auto catalog = build_catalog(g, labeling, {1, {all}});
  EXPECT_EQ(catalog.num_sets(), labeling.num_components());
}

TEST(Partitioner, PerTableSplitsGiveOneSetPerItem) {
  auto g = testing::load_example("component-c");
  auto wf = testing::load_example_workflow("component-c");
  // Tables B, D, F, H hold two unconnected items each, so per-table splits
  // on a connected table graph leave every item alone.
  std::vector<SplitNode> splits;
  for (const auto& t : wf.depgraph.tables) splits.push_back({t, {t}, {}});
  auto catalog = build_catalog(g, compute_wcc(g), {1, splits});
  EXPECT_EQ(catalog.num_sets(), 12u);
  EXPECT_EQ(extract_set_dependencies(annotate(g, catalog)).size(), 12u);
}

TEST(Partitioner, PlanMissingATableIsCoverageError) {
  auto g = testing::load_example("component-c");
  auto labeling = compute_wcc(g);
  std::vector<SplitNode> splits = {{"ab", {"A", "B"}, {}}};
  EXPECT_THROW(build_catalog(g, labeling, {4, splits}), PlanCoverageError);
}

TEST(Partitioner, SerialAndParallelCatalogsAgree) {
  auto a = prepare("component-c", 4, ExecPolicy::serial);
  auto b = prepare("component-c", 4, ExecPolicy::parallel);
  EXPECT_EQ(std::vector<SetId>(a.catalog.item_sets().begin(), a.catalog.item_sets().end()),
            std::vector<SetId>(b.catalog.item_sets().begin(), b.catalog.item_sets().end()));
}

TEST(Partitioner, ItemRowsCarryComponent) {
  auto p = prepare("component-c", 4);
  auto rows = p.catalog.item_rows();
  ASSERT_EQ(rows.size(), 12u);
  for (const auto& r : rows) EXPECT_EQ(r.ccid, ComponentId(1));
  EXPECT_EQ(p.catalog.set_components().size(), 4u);
}

TEST(Partitioner, StatsJsonShape) {
  auto p = prepare("component-c", 4);
  auto deps = extract_set_dependencies(annotate(p.g, p.catalog));
  auto j = catalog_stats_json(p.catalog, p.labeling.num_components(), p.g.triples.size(), deps.size());
  EXPECT_EQ(j.at("theta"), 4);
  EXPECT_EQ(j.at("sets"), 4);
  EXPECT_EQ(j.at("set_dependencies"), 3);
  EXPECT_EQ(j.at("partitioned_components").size(), 1u);
}

}  // namespace
}  // namespace lineagelab
