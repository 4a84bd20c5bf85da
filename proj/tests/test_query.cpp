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

#include "lineagelab/oracle.hpp"
#include "lineagelab/partitioner.hpp"
#include "lineagelab/query.hpp"
#include "test_support.hpp"

namespace lineagelab {
namespace {

StrategyInputs inputs_for(const ProvGraph& g, const std::vector<SplitNode>& splits, std::uint64_t theta,
                          std::size_t p) {
  auto labeling = compute_wcc(g);
  auto catalog = build_catalog(g, labeling, {theta, splits});
  auto annotated = annotate(g, catalog);
  return build_inputs(annotated, extract_set_dependencies(annotated), catalog.item_rows(), p);
}

StrategyInputs example_inputs(const std::string& name, std::uint64_t theta, std::size_t p = 96) {
  return inputs_for(testing::load_example(name), testing::load_example_workflow(name).splits, theta, p);
}

TEST(Strategy, NamesRoundTrip) {
  for (auto s : kAllStrategies) EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_FALSE(parse_strategy("bogus").has_value());
}

TEST(Query, RepresentativeExampleLineageOf23) {
  auto inputs = example_inputs("person", 25000);
  std::set<testing::TripleKey> want = {{15, 23, "R2"}, {18, 23, "R2"}, {3, 15, "R1"}, {6, 18, "R1"}};
  for (auto s : kAllStrategies) {
    auto out = run_strategy(inputs, s, DataItemId(23));
    EXPECT_EQ(testing::key_set(out.result.triples), want) << to_string(s);
    EXPECT_EQ(out.result.ancestor_count(), 4u);
    EXPECT_EQ(out.metrics.rounds, 3u);
    EXPECT_FALSE(out.metrics.cycle_detected);
  }
}

TEST(Query, DisplayOrderIsByDistance) {
  auto inputs = example_inputs("person", 25000);
  auto out = rq_lineage(inputs, DataItemId(23));
  ASSERT_EQ(out.result.triples.size(), 4u);
  EXPECT_EQ(out.result.distances, (std::vector<std::uint32_t>{0, 0, 1, 1}));
  EXPECT_EQ(out.result.triples[0].src, DataItemId(15));
  EXPECT_EQ(out.result.triples[2].src, DataItemId(3));
}

TEST(Query, SourceItemHasEmptyLineage) {
  auto inputs = example_inputs("person", 25000);
  for (auto s : kAllStrategies) {
    auto out = run_strategy(inputs, s, DataItemId(1));
    EXPECT_TRUE(out.result.empty());
  }
  auto rq = rq_lineage(inputs, DataItemId(1));
  EXPECT_EQ(rq.metrics.rounds, 1u);
  EXPECT_EQ(rq.metrics.partitions_scanned, 1u);
}

TEST(Query, UnknownItemIsEmptyNotError) {
  auto inputs = example_inputs("person", 25000);
  for (auto s : kAllStrategies) EXPECT_TRUE(run_strategy(inputs, s, DataItemId(999)).result.empty());
  auto cs = csprov_lineage(inputs, DataItemId(999));
  EXPECT_EQ(cs.metrics.partitions_scanned, 1u);
  EXPECT_EQ(cs.metrics.triples_recursed, 0u);
}

TEST(Query, ComponentCPruning) {
  auto inputs = example_inputs("component-c", 4);
  auto cc = ccprov_lineage(inputs, DataItemId(8));
  auto cs = csprov_lineage(inputs, DataItemId(8));
  auto rq = rq_lineage(inputs, DataItemId(8));
  EXPECT_EQ(cc.metrics.triples_recursed, 12u);
  EXPECT_EQ(cs.metrics.triples_recursed, 9u);
  EXPECT_EQ(cs.metrics.sets_in_S, 3u);
  EXPECT_EQ(rq.metrics.triples_recursed, 12u);
  EXPECT_TRUE(same_triples(cc.result, cs.result));
  EXPECT_TRUE(same_triples(rq.result, cs.result));
  EXPECT_EQ(cs.result.triples.size(), 7u);
}

TEST(Query, CsprovRestrictedTriplesAreThoseOfS) {
  auto inputs = example_inputs("component-c", 4);
  std::vector<AnnotatedTriple> restricted;
  csprov_lineage(inputs, DataItemId(11), ExecPolicy::parallel, &restricted);
  // S = {S1, S2, S4}: everything except the three triples into {7, 8, 9}.
  EXPECT_EQ(restricted.size(), 9u);
  for (const auto& t : restricted) EXPECT_TRUE(t.dst.value < 7 || t.dst.value > 9);
}

TEST(Query, RoundsCountMultiLookups) {
  auto inputs = example_inputs("component-c", 4);
  // 12 <- 10 <- 6 <- 4 <- {2, 3} <- 1: five levels, one extra empty round.
  EXPECT_EQ(rq_lineage(inputs, DataItemId(12)).metrics.rounds, 6u);
}

TEST(Query, DiamondIsNotDuplicated) {
  ProvGraph g;
  for (auto [s, d] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 4}, {3, 4}, {1, 4}}) {
    g.triples.push_back({DataItemId(s), DataItemId(d), "R", {}});
  }
  for (int i = 1; i <= 4; ++i) g.item_table.emplace(DataItemId(i), "T");
  auto inputs = inputs_for(g, {{"all", {"T"}, {}}}, 2, 8);
  for (auto s : kAllStrategies) {
    auto out = run_strategy(inputs, s, DataItemId(4));
    EXPECT_EQ(out.result.triples.size(), 5u) << to_string(s);
  }
}

TEST(Query, CycleIsFlaggedAndTerminates) {
  ProvGraph g;
  for (auto [s, d] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 1}}) {
    g.triples.push_back({DataItemId(s), DataItemId(d), "R", {}});
  }
  auto store = PartitionedStore<ProvTriple>::build(g.triples, kTripleByDst, 4);
  auto out = recursive_query(store, DataItemId(3));
  EXPECT_EQ(out.result.triples.size(), 3u);
  EXPECT_TRUE(out.metrics.cycle_detected);
}

TEST(Query, OrderingHoldsAndResultsMatchOracleOnRandomDags) {
  for (std::uint32_t seed = 1; seed <= 6; ++seed) {
    auto g = testing::random_dag(300, 0.08, seed, 12);
    std::vector<SplitNode> splits = {{"s0", {"T0"}, {}}, {"s1", {"T1"}, {}}, {"s2", {"T2"}, {}}};
    auto inputs = inputs_for(g, splits, 20, 1 + seed * 7);
    LineageOracle oracle(g.triples);
    for (std::uint64_t q = 1; q <= 300; q += 7) {
      auto truth = testing::reference_lineage(g, q);
      EXPECT_EQ(testing::key_set(oracle.lineage(DataItemId(q)).triples), truth);
      std::uint64_t recursed[3];
      for (std::size_t i = 0; i < 3; ++i) {
        auto policy = q % 2 ? ExecPolicy::serial : ExecPolicy::parallel;
        auto out = run_strategy(inputs, kAllStrategies[i], DataItemId(q), policy);
        ASSERT_EQ(testing::key_set(out.result.triples), truth) << to_string(kAllStrategies[i]) << " q=" << q;
        recursed[i] = out.metrics.triples_recursed;
      }
      EXPECT_LE(recursed[2], recursed[1]);
      EXPECT_LE(recursed[1], recursed[0]);
    }
  }
}

TEST(Query, DiskInputsMatchMemoryInputs) {
  auto memory = example_inputs("component-c", 4, 5);
  testing::TempDir dir("query");
  auto disk = persist_inputs(memory, dir.path());
  EXPECT_EQ(disk.tier(), StorageTier::disk);
  EXPECT_TRUE(inputs_exist(dir.path(), 5));
  EXPECT_FALSE(inputs_exist(dir.path(), 6));
  auto reopened = open_inputs(dir.path(), memory.set_component);
  for (std::uint64_t q = 1; q <= 12; ++q) {
    for (auto s : kAllStrategies) {
      auto a = run_strategy(memory, s, DataItemId(q));
      auto b = run_strategy(reopened, s, DataItemId(q));
      EXPECT_TRUE(same_triples(a.result, b.result));
      EXPECT_EQ(a.metrics.partitions_scanned, b.metrics.partitions_scanned);
      EXPECT_EQ(a.metrics.rows_scanned, b.metrics.rows_scanned);
      EXPECT_EQ(a.metrics.triples_recursed, b.metrics.triples_recursed);
    }
  }
}

TEST(Frontier, AdvanceDropsVisited) {
  Frontier f(5);
  f.advance({4, 3, 4});
  EXPECT_EQ(f.pending().size(), 2u);
  f.advance({5, 3, 2});
  ASSERT_EQ(f.pending().size(), 1u);
  EXPECT_EQ(f.pending()[0], 2u);
  f.advance({});
  EXPECT_TRUE(f.done());
  EXPECT_EQ(f.visited().size(), 4u);
}

}  // namespace
}  // namespace lineagelab
