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

#include "lineagelab/wcc.hpp"
#include "test_support.hpp"

namespace lineagelab {
namespace {

void expect_matches_reference(const ProvGraph& g, const ComponentLabeling& labeling) {
  auto ref = testing::reference_components(g);
  ASSERT_EQ(labeling.items().size(), ref.size());
  for (std::size_t i = 0; i < labeling.items().size(); ++i) {
    ASSERT_EQ(labeling.labels()[i].value, ref.at(labeling.items()[i].value)) << "item " << labeling.items()[i].value;
  }
}

TEST(Wcc, RepresentativeExampleHasTenComponents) {
  auto g = testing::load_example("person");
  auto labeling = compute_wcc(g);
  EXPECT_EQ(labeling.num_components(), 10u);
  // Items of the NY-age component share the minimum label.
  EXPECT_EQ(*labeling.find(DataItemId(23)), ComponentId(3));
  EXPECT_EQ(*labeling.find(DataItemId(22)), ComponentId(2));
  EXPECT_EQ(labeling.component_size(ComponentId(2)), 5u);
  // Items that appear in no triple stand alone.
  EXPECT_EQ(*labeling.find(DataItemId(10)), ComponentId(10));
  EXPECT_EQ(labeling.component_size(ComponentId(10)), 1u);
  EXPECT_FALSE(labeling.find(DataItemId(99)).has_value());
}

TEST(Wcc, TriplesOnlyReadingGivesSeven) {
  auto g = testing::load_example("person");
  auto labeling = compute_wcc(edges_of(g));
  EXPECT_EQ(labeling.num_components(), 7u);
}

TEST(Wcc, EmptyGraph) {
  auto labeling = compute_wcc(ProvGraph{});
  EXPECT_EQ(labeling.num_components(), 0u);
}

TEST(Wcc, SerialAndParallelAgreeWithReference) {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    auto g = testing::random_dag(400 + seed * 10, 0.02 * (seed % 5 + 1), seed, 40);
    auto serial = compute_wcc(g, ExecPolicy::serial);
    auto parallel = compute_wcc(g, ExecPolicy::parallel);
    EXPECT_EQ(serial, parallel);
    expect_matches_reference(g, serial);
  }
}

TEST(Wcc, ComponentSizesSumToItems) {
  auto g = testing::random_dag(1000, 0.05, 3, 30);
  auto labeling = compute_wcc(g);
  std::uint64_t total = 0;
  for (auto [c, n] : labeling.components()) total += n;
  EXPECT_EQ(total, labeling.items().size());
}

TEST(Wcc, InducedSubgraph) {
  auto g = testing::load_example("component-c");
  std::vector<DataItemId> items = {DataItemId(1), DataItemId(2), DataItemId(3), DataItemId(7), DataItemId(8)};
  auto labeling = induced_wcc(g, items);
  EXPECT_EQ(labeling.num_components(), 2u);
  EXPECT_EQ(*labeling.find(DataItemId(8)), ComponentId(7));
  EXPECT_EQ(*labeling.find(DataItemId(3)), ComponentId(1));
}

TEST(DisjointSets, UniteAndSizes) {
  DisjointSets ds(5);
  EXPECT_TRUE(ds.unite(0, 1));
  EXPECT_FALSE(ds.unite(1, 0));
  EXPECT_TRUE(ds.unite(3, 4));
  EXPECT_EQ(ds.size_of(1), 2u);
  EXPECT_NE(ds.find(0), ds.find(3));
}

}  // namespace
}  // namespace lineagelab
