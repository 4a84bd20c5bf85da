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

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "lineagelab/csv.hpp"
#include "lineagelab/generator.hpp"
#include "lineagelab/io.hpp"
#include "lineagelab/oracle.hpp"
#include "lineagelab/partitioner.hpp"
#include "lineagelab/query.hpp"
#include "lineagelab/query_classes.hpp"
#include "lineagelab/validate.hpp"
#include "lineagelab/wcc.hpp"
#include "lineagelab/workflow.hpp"

namespace lineagelab::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::string data;
  std::string triples;
  std::string items;
  std::string workflow;
  std::string artifacts;
  std::size_t partitions = 96;
  std::optional<std::uint64_t> theta;
  std::string strategy = "all";
  std::string tier = "memory";
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::string format;

  void resolve() {
    if (data.empty()) {
      const char* env = std::getenv("LINEAGELAB_DATA_DIR");
      data = env != nullptr && *env != '\0' ? env : ".";
    }
    auto in_data = [&](std::string& path, const char* name) {
      if (path.empty()) path = (fs::path(data) / name).string();
    };
    in_data(triples, "triples.csv");
    in_data(items, "items.csv");
    in_data(workflow, "workflow.json");
    in_data(artifacts, "artifacts");
  }

  fs::path artifact(const char* name) const { return fs::path(artifacts) / name; }
  bool json_output() const { return format == "json"; }
};

constexpr const char* kAnnotatedFile = "annotated-triples.csv";
constexpr const char* kSetDepsFile = "set-dependencies.csv";
constexpr const char* kStatsFile = "catalog-stats.json";
constexpr const char* kItemSetsFile = "item-sets.csv";
constexpr const char* kComponentsFile = "components.csv";
constexpr const char* kStoresDir = "stores";

void add_dataset_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--data", cfg.data, "Dataset directory (default $LINEAGELAB_DATA_DIR or .)");
  cmd->add_option("--triples", cfg.triples, "Triples CSV (default <data>/triples.csv)");
  cmd->add_option("--items", cfg.items, "Item table CSV (default <data>/items.csv)");
  cmd->add_option("--workflow", cfg.workflow, "Workflow JSON (default <data>/workflow.json)");
  cmd->add_option("--artifacts", cfg.artifacts, "Artifact directory (default <data>/artifacts)");
}

void add_store_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--partitions", cfg.partitions, "Hash partitions per store")->check(CLI::PositiveNumber);
  cmd->add_option("--tier", cfg.tier, "Storage tier")->check(CLI::IsMember({"memory", "disk"}));
}

void add_format_flag(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

void print_violations(std::ostream& err, const std::vector<Violation>& graph, const std::vector<std::string>& wf) {
  for (const auto& v : graph) fmt::print(err, "invalid graph: {}: {}\n", to_string(v.kind), v.message);
  for (const auto& m : wf) fmt::print(err, "invalid workflow: {}\n", m);
}

// Validation report; true when the dataset is usable.
bool check_dataset(const ProvGraph& g, const WorkflowConfig* wf, std::ostream& err) {
  auto graph = validate_graph(g);
  std::vector<std::string> workflow;
  if (wf != nullptr) workflow = validate_workflow(*wf);
  print_violations(err, graph, workflow);
  return graph.empty() && workflow.empty();
}

int cmd_generate(const RunConfig& cfg, const std::string& spec_path, double scale, std::optional<std::uint64_t> seed,
                 std::uint32_t copies, const std::string& out_dir, std::ostream& out) {
  auto spec = spec_path.empty() ? default_workflow_spec(scale) : parse_workflow_spec(read_file(spec_path), spec_path);
  if (seed) spec.seed = *seed;
  auto g = generate(spec);
  if (copies > 1) g = replicate(g, copies);
  fs::path dir(out_dir);
  write_to(dir / "triples.csv", [&](std::ostream& os) { write_triples(os, g.triples); });
  write_to(dir / "items.csv", [&](std::ostream& os) { write_item_table(os, g.item_table); });
  write_to(dir / "workflow.json", [&](std::ostream& os) { write_workflow(os, {spec.depgraph, spec.splits, 0}); });
  write_to(dir / "spec.json", [&](std::ostream& os) { os << workflow_spec_json(spec).dump(2) << '\n'; });
  auto census = fan_in_census(g, spec.fan_in);
  if (cfg.json_output()) {
    json bands = json::array();
    for (std::size_t b = 0; b < spec.fan_in.size(); ++b) {
      bands.push_back({{"min", spec.fan_in[b].min}, {"max", spec.fan_in[b].max},
                       {"target", spec.fan_in[b].probability}, {"observed", census[b]}});
    }
    out << json{{"triples", g.triples.size()}, {"items", g.item_table.size()}, {"fan_in", bands}}.dump(2) << '\n';
  } else {
    fmt::print(out, "wrote {} triples over {} items to {}\n", g.triples.size(), g.item_table.size(), dir.string());
    for (std::size_t b = 0; b < spec.fan_in.size(); ++b) {
      fmt::print(out, "fan-in [{}, {}]: {:.4f} of derived items (target {:.4f})\n", spec.fan_in[b].min,
                 spec.fan_in[b].max, census[b], spec.fan_in[b].probability);
    }
  }
  return kOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto g = read_graph(cfg.triples, cfg.items);
  std::optional<WorkflowConfig> wf;
  if (fs::exists(cfg.workflow)) wf = read_workflow(cfg.workflow);
  auto graph = validate_graph(g);
  auto workflow = wf ? validate_workflow(*wf) : std::vector<std::string>{};
  if (cfg.json_output()) {
    json violations = json::array();
    for (const auto& v : graph) {
      json items = json::array();
      for (auto i : v.items) items.push_back(i.value);
      violations.push_back({{"kind", to_string(v.kind)}, {"items", items}, {"message", v.message}});
    }
    out << json{{"valid", graph.empty() && workflow.empty()},
                {"triples", g.triples.size()},
                {"graph_violations", violations},
                {"workflow_violations", workflow}}
               .dump(2)
        << '\n';
  } else {
    print_violations(err, graph, workflow);
    if (graph.empty() && workflow.empty()) fmt::print(out, "ok: {} triples, {} items\n", g.triples.size(), g.items().size());
  }
  return graph.empty() && workflow.empty() ? kOk : kValidationFailure;
}

int cmd_preprocess(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto g = read_graph(cfg.triples, cfg.items);
  auto wf = read_workflow(cfg.workflow);
  if (!check_dataset(g, &wf, err)) return kValidationFailure;

  PartitionPlan plan{cfg.theta.value_or(wf.theta != 0 ? wf.theta : kDefaultTheta), wf.splits};
  auto labeling = compute_wcc(g);
  auto catalog = build_catalog(g, labeling, plan);
  auto annotated = annotate(g, catalog);
  auto deps = extract_set_dependencies(annotated);
  auto item_rows = catalog.item_rows();
  auto stats = catalog_stats_json(catalog, labeling.num_components(), g.triples.size(), deps.size());

  write_to(cfg.artifact(kAnnotatedFile), [&](std::ostream& os) { write_annotated(os, annotated); });
  write_to(cfg.artifact(kSetDepsFile), [&](std::ostream& os) { write_set_dependencies(os, deps); });
  write_to(cfg.artifact(kItemSetsFile), [&](std::ostream& os) { write_item_sets(os, item_rows); });
  write_to(cfg.artifact(kComponentsFile), [&](std::ostream& os) {
    os << kLabelingHeader << '\n';
    for (std::size_t i = 0; i < labeling.items().size(); ++i) {
      os << labeling.items()[i].value << ',' << labeling.labels()[i].value << '\n';
    }
  });
  write_to(cfg.artifact(kStatsFile), [&](std::ostream& os) { os << stats.dump(2) << '\n'; });
  if (cfg.tier == "disk") {
    persist_inputs(build_inputs(annotated, deps, item_rows, cfg.partitions), cfg.artifact(kStoresDir));
  }
  for (const auto& w : catalog.warnings()) fmt::print(err, "warning: {}\n", w);

  if (cfg.json_output()) {
    out << stats.dump(2) << '\n';
    return kOk;
  }
  fmt::print(out, "{} triples, {} components, {} sets, {} set dependencies (theta {})\n", g.triples.size(),
             labeling.num_components(), catalog.num_sets(), deps.size(), plan.theta);
  for (const auto& pc : catalog.partitioned()) {
    fmt::print(out, "component {} ({} nodes) -> {} sets\n", pc.component.value, pc.nodes, pc.sets);
    for (const auto& s : pc.splits) {
      fmt::print(out, "  {:<{}}{:<8} sets {:>8}  >=1000 {:>5}  largest {:>8}\n", "", 2 * s.depth, s.split_id, s.sets,
                 s.sets_ge_1000, s.largest);
    }
  }
  return kOk;
}

// Inputs from preprocessing artifacts, or from raw triples when rq is the
// only strategy and nothing was preprocessed.
StrategyInputs load_inputs(const RunConfig& cfg, bool rq_only) {
  if (rq_only && !fs::exists(cfg.artifact(kAnnotatedFile))) {
    std::vector<AnnotatedTriple> rows;
    for (auto& t : read_triples(cfg.triples)) rows.push_back({t.src, t.dst, t.op, SetId(1), SetId(1), {}});
    return build_inputs(rows, {}, {}, cfg.partitions);
  }
  auto item_rows = read_item_sets(cfg.artifact(kItemSetsFile));
  if (cfg.tier == "disk") {
    auto dir = cfg.artifact(kStoresDir);
    if (!inputs_exist(dir, cfg.partitions)) {
      persist_inputs(build_inputs(read_annotated(cfg.artifact(kAnnotatedFile)),
                                  read_set_dependencies(cfg.artifact(kSetDepsFile)), item_rows, cfg.partitions),
                     dir);
    }
    std::vector<ComponentId> set_component;
    for (const auto& r : item_rows) {
      if (set_component.size() < r.csid.value) set_component.resize(r.csid.value);
      set_component[r.csid.value - 1] = r.ccid;
    }
    return open_inputs(dir, std::move(set_component));
  }
  return build_inputs(read_annotated(cfg.artifact(kAnnotatedFile)), read_set_dependencies(cfg.artifact(kSetDepsFile)),
                      item_rows, cfg.partitions);
}

json metrics_json(const QueryMetrics& m) {
  return {{"rounds", m.rounds},
          {"partitions_scanned", m.partitions_scanned},
          {"rows_scanned", m.rows_scanned},
          {"triples_recursed", m.triples_recursed},
          {"sets_in_S", m.sets_in_S},
          {"cycle_detected", m.cycle_detected}};
}

json triples_json(const LineageResult& r) {
  json triples = json::array();
  for (std::size_t i = 0; i < r.triples.size(); ++i) {
    const auto& t = r.triples[i];
    triples.push_back({{"src", t.src.value}, {"dst", t.dst.value}, {"op", t.op}});
  }
  return triples;
}

void print_metrics_text(std::ostream& out, const char* name, const QueryMetrics& m) {
  fmt::print(out, "{:<7} rounds {:>4}  partitions {:>7}  rows {:>9}  recursed {:>9}  sets {:>6}\n", name, m.rounds,
             m.partitions_scanned, m.rows_scanned, m.triples_recursed, m.sets_in_S);
}

int cmd_query(const RunConfig& cfg, std::uint64_t q, std::ostream& out, std::ostream& err) {
  std::vector<Strategy> strategies;
  if (cfg.strategy == "all") {
    strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
  } else {
    strategies.push_back(*parse_strategy(cfg.strategy));
  }
  auto inputs = load_inputs(cfg, strategies.size() == 1 && strategies[0] == Strategy::rq);
  std::vector<QueryOutcome> outcomes;
  for (auto s : strategies) outcomes.push_back(run_strategy(inputs, s, DataItemId(q)));
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (!same_triples(outcomes[0].result, outcomes[i].result)) {
      throw InvariantError(fmt::format("{} and {} disagree on the lineage of {}", to_string(strategies[0]),
                                       to_string(strategies[i]), q));
    }
  }

  json warnings = json::array();
  ScanCost ignored;
  bool known = true;
  if (outcomes[0].result.empty()) {
    if (cfg.strategy != "rq") {
      known = find_connected_set(inputs, DataItemId(q), ignored).has_value();
    } else if (fs::exists(cfg.items)) {
      known = read_item_table(cfg.items).count(DataItemId(q)) > 0;
    }
  }
  if (!known) {
    warnings.push_back(fmt::format("item {} is not in the dataset", q));
  }
  for (const auto& w : warnings) fmt::print(err, "warning: {}\n", w.get<std::string>());

  const auto& result = outcomes[0].result;
  if (cfg.json_output()) {
    json metrics;
    if (strategies.size() == 1) {
      metrics = metrics_json(outcomes[0].metrics);
    } else {
      for (std::size_t i = 0; i < strategies.size(); ++i) metrics[to_string(strategies[i])] = metrics_json(outcomes[i].metrics);
    }
    out << json{{"root", q},
                {"strategy", cfg.strategy},
                {"triples", triples_json(result)},
                {"metrics", metrics},
                {"warnings", warnings}}
               .dump(2)
        << '\n';
    return kOk;
  }
  fmt::print(out, "lineage of {}: {} triples, {} ancestors\n", q, result.triples.size(), result.ancestor_count());
  for (std::size_t i = 0; i < result.triples.size(); ++i) {
    const auto& t = result.triples[i];
    fmt::print(out, "  [{}] {} -> {} ({})\n", result.distances[i], t.src.value, t.dst.value, t.op);
  }
  for (std::size_t i = 0; i < strategies.size(); ++i) print_metrics_text(out, to_string(strategies[i]), outcomes[i].metrics);
  return kOk;
}

int cmd_bench(const RunConfig& cfg, std::size_t per_class, std::ostream& out) {
  auto g = read_graph(cfg.triples, cfg.items);
  auto wf = read_workflow(cfg.workflow);
  auto inputs = load_inputs(cfg, false);
  auto labeling = compute_wcc(g);
  std::uint64_t theta = cfg.theta.value_or(wf.theta != 0 ? wf.theta : kDefaultTheta);
  LineageOracle oracle(g.triples);
  std::vector<DataItemId> candidates;
  candidates.reserve(g.triples.size());
  for (const auto& t : g.triples) candidates.push_back(t.dst);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto classes = default_query_classes();
  auto samples = sample_query_classes(oracle, labeling, theta, candidates, classes, {per_class, cfg.seed, 200000});
  auto reports = run_bench(inputs, oracle, samples, cfg.jobs);

  std::uint64_t mismatches = 0;
  std::uint64_t violations = 0;
  for (const auto& r : reports) {
    mismatches += r.mismatches;
    violations += r.order_violations;
  }
  if (cfg.json_output()) {
    auto doc = bench_report_json(reports);
    doc["theta"] = theta;
    doc["partitions"] = cfg.partitions;
    doc["tier"] = cfg.tier;
    doc["seed"] = cfg.seed;
    out << doc.dump(2) << '\n';
  } else {
    fmt::print(out, "{:<6} {:<7} {:>7} {:>11} {:>12} {:>12} {:>8}\n", "class", "strategy", "queries", "partitions",
               "rows", "recursed", "rounds");
    for (const auto& r : reports) {
      if (r.sample.skipped()) {
        fmt::print(out, "{:<6} skipped (no item found in {} candidates)\n", r.sample.cls.name, r.sample.examined);
        continue;
      }
      for (const auto& s : r.strategies) {
        fmt::print(out, "{:<6} {:<7} {:>7} {:>11.1f} {:>12.1f} {:>12.1f} {:>8.1f}\n", r.sample.cls.name,
                   to_string(s.strategy), r.sample.items.size(), s.partitions_scanned.mean, s.rows_scanned.mean,
                   s.triples_recursed.mean, s.rounds.mean);
      }
    }
  }
  if (mismatches > 0) throw InvariantError(fmt::format("{} sampled queries disagreed with the oracle", mismatches));
  if (violations > 0) throw InvariantError(fmt::format("{} sampled queries broke csprov <= ccprov <= rq", violations));
  return kOk;
}

int cmd_replicate(const RunConfig& cfg, std::uint32_t k, const std::string& out_dir, std::ostream& out) {
  auto g = replicate(read_graph(cfg.triples, cfg.items), k);
  fs::path dir(out_dir);
  write_to(dir / "triples.csv", [&](std::ostream& os) { write_triples(os, g.triples); });
  write_to(dir / "items.csv", [&](std::ostream& os) { write_item_table(os, g.item_table); });
  if (fs::exists(cfg.workflow)) {
    auto wf = read_workflow(cfg.workflow);
    write_to(dir / "workflow.json", [&](std::ostream& os) { write_workflow(os, wf); });
  }
  fmt::print(out, "wrote {} triples over {} items to {}\n", g.triples.size(), g.item_table.size(), dir.string());
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lineage queries over partitioned workflow provenance"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset");
  std::string spec_path;
  std::string out_dir;
  double scale = 1.0;
  std::optional<std::uint64_t> gen_seed;
  std::uint32_t copies = 1;
  gen->add_option("--spec", spec_path, "Workflow spec JSON (default: built-in spec)");
  gen->add_option("--scale", scale, "Scale of the built-in spec")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Override the spec seed");
  gen->add_option("--replicate", copies, "Disjoint copies of the generated graph")->check(CLI::PositiveNumber);
  gen->add_option("--out", out_dir, "Output directory")->required();
  add_format_flag(gen, cfg);

  auto* val = app.add_subcommand("validate", "Check a dataset and its workflow");
  add_dataset_flags(val, cfg);
  add_format_flag(val, cfg);

  auto* pre = app.add_subcommand("preprocess", "Components, weakly connected sets and set dependencies");
  add_dataset_flags(pre, cfg);
  add_store_flags(pre, cfg);
  pre->add_option("--theta", cfg.theta, "Component size that triggers partitioning")->check(CLI::PositiveNumber);
  add_format_flag(pre, cfg);

  auto* qry = app.add_subcommand("query", "Lineage of one item");
  std::uint64_t item = 0;
  qry->add_option("item", item, "Data item id")->required();
  add_dataset_flags(qry, cfg);
  add_store_flags(qry, cfg);
  qry->add_option("--strategy", cfg.strategy, "rq, ccprov, csprov or all")
      ->check(CLI::IsMember({"rq", "ccprov", "csprov", "all"}));
  add_format_flag(qry, cfg);

  auto* bench = app.add_subcommand("bench", "Scan metrics per query class");
  std::size_t per_class = 10;
  add_dataset_flags(bench, cfg);
  add_store_flags(bench, cfg);
  bench->add_option("--theta", cfg.theta, "Large-component size cut")->check(CLI::PositiveNumber);
  bench->add_option("--jobs", cfg.jobs, "Concurrent queries")->check(CLI::PositiveNumber);
  bench->add_option("--seed", cfg.seed, "Sampling seed");
  bench->add_option("--per-class", per_class, "Items sampled per class")->check(CLI::PositiveNumber);
  add_format_flag(bench, cfg);

  auto* rep = app.add_subcommand("replicate", "Disjoint copies of a dataset");
  std::uint32_t k = 2;
  add_dataset_flags(rep, cfg);
  rep->add_option("-k,--copies", k, "Number of copies")->check(CLI::PositiveNumber);
  rep->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kValidationFailure;
  }

  try {
    cfg.resolve();
    if (cfg.format.empty()) cfg.format = qry->parsed() ? "json" : "text";
    if (gen->parsed()) return cmd_generate(cfg, spec_path, scale, gen_seed, copies, out_dir, out);
    if (val->parsed()) return cmd_validate(cfg, out, err);
    if (pre->parsed()) return cmd_preprocess(cfg, out, err);
    if (qry->parsed()) return cmd_query(cfg, item, out, err);
    if (bench->parsed()) return cmd_bench(cfg, per_class, out);
    if (rep->parsed()) return cmd_replicate(cfg, k, out_dir, out);
  } catch (const MissingArtifactError& e) {
    fmt::print(err, "missing artifact: {}\n", e.what());
    return kMissingArtifact;
  } catch (const InvariantError& e) {
    fmt::print(err, "invariant breach: {}\n", e.what());
    return kInvariantBreach;
  } catch (const FormatError& e) {
    fmt::print(err, "invalid input: {}\n", e.what());
    return kValidationFailure;
  } catch (const GenerationError& e) {
    fmt::print(err, "invalid spec: {}\n", e.what());
    return kValidationFailure;
  } catch (const PlanCoverageError& e) {
    fmt::print(err, "invalid workflow: {}\n", e.what());
    return kValidationFailure;
  } catch (const ConfigError& e) {
    fmt::print(err, "invalid configuration: {}\n", e.what());
    return kValidationFailure;
  } catch (const CatalogCoverageError& e) {
    fmt::print(err, "invariant breach: {}\n", e.what());
    return kInvariantBreach;
  }
  return kOk;
}

}  // namespace lineagelab::cli
