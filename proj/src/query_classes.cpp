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

#include "lineagelab/query_classes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <omp.h>

#include "lineagelab/pcg.hpp"

namespace lineagelab {

std::vector<QueryClass> default_query_classes() {
  return {{"SC-SL", false, 100, 200}, {"LC-SL", true, 100, 200}, {"LC-LL", true, 5000, 10000}};
}

std::vector<ClassSample> sample_query_classes(const LineageOracle& oracle, const ComponentLabeling& labeling,
                                              std::uint64_t theta, std::span<const DataItemId> candidates,
                                              std::span<const QueryClass> classes, const SamplingOptions& options) {
  std::vector<ClassSample> out;
  for (const auto& c : classes) out.push_back({c, {}, 0});

  // Fisher-Yates over candidate indices.
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  Pcg32 rng(options.seed, 0x71c1a55);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(static_cast<std::uint32_t>(i))]);
  }

  auto open = [&](const ClassSample& s) {
    return s.items.size() < options.per_class && s.examined < options.budget;
  };
  for (auto idx : order) {
    if (std::none_of(out.begin(), out.end(), open)) break;
    auto q = candidates[idx];
    auto c = labeling.find(q);
    if (!c) continue;
    bool large = labeling.component_size(*c) >= theta;
    std::vector<ClassSample*> wanting;
    for (auto& s : out) {
      if (s.cls.large_component == large && open(s)) wanting.push_back(&s);
    }
    if (wanting.empty()) continue;
    auto census = oracle.census(q);
    for (auto* s : wanting) {
      ++s->examined;
      if (census.ancestors >= s->cls.min_ancestors && census.ancestors <= s->cls.max_ancestors) s->items.push_back(q);
    }
  }
  return out;
}

MetricSummary summarize(std::vector<std::uint64_t> values) {
  MetricSummary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  auto rank = [&](double p) {
    auto r = static_cast<std::size_t>(std::ceil(p * static_cast<double>(values.size())));
    return values[std::clamp<std::size_t>(r, 1, values.size()) - 1];
  };
  s.mean = static_cast<double>(std::accumulate(values.begin(), values.end(), std::uint64_t{0})) /
           static_cast<double>(values.size());
  s.p50 = rank(0.5);
  s.p90 = rank(0.9);
  s.max = values.back();
  return s;
}

std::vector<ClassReport> run_bench(const StrategyInputs& inputs, const LineageOracle& oracle,
                                   std::span<const ClassSample> samples, unsigned jobs) {
  constexpr std::size_t kStrategies = std::size(kAllStrategies);
  std::vector<ClassReport> reports;
  for (const auto& sample : samples) {
    ClassReport report{sample, {}, 0, 0};
    if (sample.skipped()) {
      reports.push_back(std::move(report));
      continue;
    }
    const auto n = sample.items.size();
    std::vector<std::array<QueryMetrics, kStrategies>> metrics(n);
    std::vector<std::uint8_t> mismatch(n, 0);

#pragma omp parallel for schedule(dynamic) num_threads(std::max(1u, jobs))
    for (std::size_t i = 0; i < n; ++i) {
      auto truth = oracle.lineage(sample.items[i]);
      for (std::size_t s = 0; s < kStrategies; ++s) {
        auto outcome = run_strategy(inputs, kAllStrategies[s], sample.items[i], ExecPolicy::serial);
        if (!same_triples(outcome.result, truth)) mismatch[i] = 1;
        metrics[i][s] = outcome.metrics;
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      report.mismatches += mismatch[i];
      auto rq = metrics[i][0].triples_recursed;
      auto cc = metrics[i][1].triples_recursed;
      auto cs = metrics[i][2].triples_recursed;
      if (!(cs <= cc && cc <= rq)) ++report.order_violations;
    }
    for (std::size_t s = 0; s < kStrategies; ++s) {
      auto column = [&](auto field) {
        std::vector<std::uint64_t> v;
        for (const auto& m : metrics) v.push_back(m[s].*field);
        return summarize(std::move(v));
      };
      report.strategies.push_back({kAllStrategies[s], column(&QueryMetrics::rounds),
                                   column(&QueryMetrics::partitions_scanned), column(&QueryMetrics::rows_scanned),
                                   column(&QueryMetrics::triples_recursed)});
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

namespace {

nlohmann::json summary_json(const MetricSummary& s) {
  return {{"mean", s.mean}, {"p50", s.p50}, {"p90", s.p90}, {"max", s.max}};
}

}  // namespace

nlohmann::json bench_report_json(std::span<const ClassReport> reports) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json items = nlohmann::json::array();
    for (auto q : r.sample.items) items.push_back(q.value);
    nlohmann::json c = {{"class", r.sample.cls.name},
                        {"large_component", r.sample.cls.large_component},
                        {"ancestor_band", {r.sample.cls.min_ancestors, r.sample.cls.max_ancestors}},
                        {"skipped", r.sample.skipped()},
                        {"candidates_examined", r.sample.examined},
                        {"items", items},
                        {"mismatches", r.mismatches},
                        {"order_violations", r.order_violations}};
    nlohmann::json strategies = nlohmann::json::object();
    for (const auto& s : r.strategies) {
      strategies[to_string(s.strategy)] = {{"rounds", summary_json(s.rounds)},
                                           {"partitions_scanned", summary_json(s.partitions_scanned)},
                                           {"rows_scanned", summary_json(s.rows_scanned)},
                                           {"triples_recursed", summary_json(s.triples_recursed)}};
    }
    c["strategies"] = strategies;
    classes.push_back(std::move(c));
  }
  return {{"classes", classes}};
}

}  // namespace lineagelab
