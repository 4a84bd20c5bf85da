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

#include "lineagelab/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "lineagelab/csv.hpp"
#include "lineagelab/parallel.hpp"
#include "lineagelab/pcg.hpp"

namespace lineagelab {

namespace {

struct Topology {
  std::vector<std::size_t> order;                 // table indices, parents first
  std::vector<std::vector<std::size_t>> parents;  // per table index
};

Topology topology(const DependencyGraph& depgraph) {
  std::unordered_map<TableId, std::size_t> index;
  for (std::size_t i = 0; i < depgraph.tables.size(); ++i) {
    if (!index.emplace(depgraph.tables[i], i).second) {
      throw GenerationError("table '" + depgraph.tables[i] + "' declared twice");
    }
  }
  Topology topo;
  topo.parents.resize(depgraph.tables.size());
  std::vector<std::size_t> indegree(depgraph.tables.size(), 0);
  std::vector<std::vector<std::size_t>> children(depgraph.tables.size());
  for (const auto& [p, c] : depgraph.edges) {
    auto pi = index.find(p);
    auto ci = index.find(c);
    if (pi == index.end() || ci == index.end()) throw GenerationError("edge references an undeclared table");
    topo.parents[ci->second].push_back(pi->second);
    children[pi->second].push_back(ci->second);
    ++indegree[ci->second];
  }
  // Kahn's algorithm, always taking the earliest-declared ready table.
  std::vector<bool> done(depgraph.tables.size(), false);
  while (topo.order.size() < depgraph.tables.size()) {
    std::size_t pick = depgraph.tables.size();
    for (std::size_t i = 0; i < depgraph.tables.size(); ++i) {
      if (!done[i] && indegree[i] == 0) {
        pick = i;
        break;
      }
    }
    if (pick == depgraph.tables.size()) throw GenerationError("dependency graph has a cycle");
    done[pick] = true;
    topo.order.push_back(pick);
    for (auto c : children[pick]) --indegree[c];
  }
  return topo;
}

// Discrete sampler over fan-in values of all bands.
class FanInSampler {
 public:
  explicit FanInSampler(std::span<const FanInBand> bands) {
    double band_cdf = 0;
    for (const auto& b : bands) {
      band_cdf += b.probability;
      band_cdf_.push_back(band_cdf);
      std::vector<double> cdf;
      double w = 0;
      for (std::uint32_t k = b.min; k <= b.max; ++k) {
        w += std::pow(b.decay, static_cast<double>(k - b.min));
        cdf.push_back(w);
      }
      for (auto& c : cdf) c /= w;
      value_cdf_.push_back(std::move(cdf));
      mins_.push_back(b.min);
    }
  }

  std::uint32_t draw(Pcg32& rng) const {
    double u = rng.uniform() * band_cdf_.back();
    auto band = static_cast<std::size_t>(std::upper_bound(band_cdf_.begin(), band_cdf_.end(), u) - band_cdf_.begin());
    band = std::min(band, band_cdf_.size() - 1);
    const auto& cdf = value_cdf_[band];
    double v = rng.uniform();
    auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), v) - cdf.begin());
    return mins_[band] + static_cast<std::uint32_t>(std::min(k, cdf.size() - 1));
  }

 private:
  std::vector<double> band_cdf_;
  std::vector<std::vector<double>> value_cdf_;
  std::vector<std::uint32_t> mins_;
};

void check_bands(std::span<const FanInBand> bands, const std::string& where) {
  if (bands.empty()) throw GenerationError(where + ": no fan-in bands");
  double total = 0;
  for (const auto& b : bands) {
    if (b.min == 0 || b.max < b.min) throw GenerationError(where + ": band bounds must satisfy 1 <= min <= max");
    if (b.probability < 0 || b.decay <= 0) throw GenerationError(where + ": negative probability or decay");
    total += b.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) throw GenerationError(where + ": band probabilities sum to " + std::to_string(total));
}

// One group instance: id range and shape of every table in it.
struct GroupLayout {
  std::vector<std::uint64_t> first_id;
  std::vector<std::uint64_t> rows;
  std::vector<std::uint64_t> clusters;

  // Items of cluster c occupy [start(c), start(c + 1)) within the table.
  std::uint64_t cluster_start(std::size_t t, std::uint64_t c) const {
    return (c * rows[t] + clusters[t] - 1) / clusters[t];
  }
  std::uint64_t cluster_of(std::size_t t, std::uint64_t j) const { return j * clusters[t] / rows[t]; }
};

// Cluster range [lo, hi) of parent table u matching cluster i of child table t.
std::pair<std::uint64_t, std::uint64_t> parent_clusters(const GroupLayout& g, std::size_t t, std::uint64_t i,
                                                        std::size_t u) {
  auto gt = g.clusters[t];
  auto gu = g.clusters[u];
  if (gu >= gt) return {(i * gu + gt - 1) / gt, ((i + 1) * gu + gt - 1) / gt};
  auto j = i * gu / gt;
  return {j, j + 1};
}

// Floyd's algorithm: k distinct values from [0, n), ascending.
std::vector<std::uint64_t> sample_distinct(Pcg32& rng, std::uint64_t n, std::uint64_t k) {
  std::vector<std::uint64_t> chosen;
  chosen.reserve(k);
  for (std::uint64_t j = n - k; j < n; ++j) {
    std::uint64_t t = j + 1 <= std::numeric_limits<std::uint32_t>::max()
                          ? rng.below(static_cast<std::uint32_t>(j + 1))
                          : static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(j + 1));
    if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) t = j;
    chosen.push_back(t);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::span<const FanInBand> bands_of(const WorkflowSpec& spec, std::size_t t) {
  auto it = spec.table_fan_in.find(spec.depgraph.tables[t]);
  return it != spec.table_fan_in.end() ? std::span<const FanInBand>(it->second) : std::span<const FanInBand>(spec.fan_in);
}

std::uint64_t upstream_rows(const GroupLayout& g, const Topology& topo, std::size_t t) {
  std::uint64_t n = 0;
  for (auto u : topo.parents[t]) n += g.rows[u];
  return n;
}

// Bands whose minimum exceeds the upstream rows of a table cannot be drawn
// there. Their mass moves to the lowest band, and every other item drawing
// that band gets a raised probability, so the share over the whole dataset
// stays on target.
std::vector<FanInBand> calibrated_bands(std::span<const FanInBand> bands, std::span<const double> boost,
                                        std::uint64_t capacity) {
  std::vector<FanInBand> out(bands.begin(), bands.end());
  std::size_t lowest = 0;
  for (std::size_t b = 1; b < out.size(); ++b) {
    if (out[b].min < out[lowest].min) lowest = b;
  }
  if (capacity < out[lowest].min) return out;
  double rest = 0;
  for (std::size_t b = 0; b < out.size(); ++b) {
    if (b == lowest) continue;
    out[b].probability = capacity >= out[b].min ? out[b].probability * boost[b] : 0.0;
    rest += out[b].probability;
  }
  if (rest > 1) {
    for (auto& band : out) band.probability /= rest;
    out[lowest].probability = 0;
  } else {
    out[lowest].probability = 1 - rest;
  }
  return out;
}

std::vector<ProvTriple> generate_table(const WorkflowSpec& spec, const Topology& topo,
                                       const std::vector<GroupLayout>& layouts, std::span<const double> boost,
                                       std::size_t t) {
  const auto& name = spec.depgraph.tables[t];
  const auto bands = bands_of(spec, t);
  std::map<std::uint64_t, FanInSampler> samplers;  // by number of reachable bands
  Pcg32 rng(spec.seed, t);
  const std::string op = "R_" + name;
  std::vector<ProvTriple> out;
  const auto& parents = topo.parents[t];
  if (parents.empty()) return out;

  for (const auto& g : layouts) {
    std::vector<std::size_t> live;
    for (auto u : parents) {
      if (g.rows[u] > 0) live.push_back(u);
    }
    if (g.rows[t] > 0 && live.empty()) {
      throw GenerationError("table '" + name + "' has rows but every upstream table is empty");
    }
    if (g.rows[t] == 0) continue;
    const auto capacity = upstream_rows(g, topo, t);
    const auto reachable = static_cast<std::uint64_t>(
        std::count_if(bands.begin(), bands.end(), [&](const FanInBand& b) { return capacity >= b.min; }));
    auto it = samplers.find(reachable);
    if (it == samplers.end()) it = samplers.emplace(reachable, FanInSampler(calibrated_bands(bands, boost, capacity))).first;
    const auto& sampler = it->second;
    std::vector<std::uint64_t> per_table(live.size());
    for (std::uint64_t j = 0; j < g.rows[t]; ++j) {
      const auto dst = DataItemId(g.first_id[t] + j);
      const auto cluster = g.cluster_of(t, j);
      std::uint32_t k = sampler.draw(rng);
      std::fill(per_table.begin(), per_table.end(), 0);
      for (std::uint32_t p = 0; p < k; ++p) ++per_table[live.size() == 1 ? 0 : rng.below(static_cast<std::uint32_t>(live.size()))];
      // Parents a table cannot supply move to tables with rows to spare.
      std::uint64_t excess = 0;
      for (std::size_t m = 0; m < live.size(); ++m) {
        if (per_table[m] > g.rows[live[m]]) {
          excess += per_table[m] - g.rows[live[m]];
          per_table[m] = g.rows[live[m]];
        }
      }
      for (std::size_t m = 0; m < live.size() && excess > 0; ++m) {
        auto moved = std::min(excess, g.rows[live[m]] - per_table[m]);
        per_table[m] += moved;
        excess -= moved;
      }

      for (std::size_t m = 0; m < live.size(); ++m) {
        if (per_table[m] == 0) continue;
        auto u = live[m];
        auto [lo, hi] = parent_clusters(g, t, cluster, u);
        // Too few candidates: double the range to the enclosing aligned block,
        // so widened draws of different items nest instead of chaining.
        auto pool = [&] { return g.cluster_start(u, hi) - g.cluster_start(u, lo); };
        while (pool() < per_table[m] && hi - lo < g.clusters[u]) {
          auto width = 2 * (hi - lo);
          lo = lo / width * width;
          hi = std::min(lo + width, g.clusters[u]);
          if (hi - lo < width) lo = hi > width ? hi - width : 0;
        }
        auto want = std::min<std::uint64_t>(per_table[m], pool());
        auto base = g.first_id[u] + g.cluster_start(u, lo);
        for (auto offset : sample_distinct(rng, pool(), want)) {
          out.push_back({DataItemId(base + offset), dst, op, {}});
        }
      }
    }
  }
  return out;
}

std::vector<FanInBand> bands_from_json(const nlohmann::json& j) {
  std::vector<FanInBand> bands;
  for (const auto& b : j) {
    bands.push_back({b.at("min").get<std::uint32_t>(), b.at("max").get<std::uint32_t>(), b.at("p").get<double>(),
                     b.value("decay", 1.0)});
  }
  return bands;
}

nlohmann::json bands_to_json(std::span<const FanInBand> bands) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& b : bands) out.push_back({{"min", b.min}, {"max", b.max}, {"p", b.probability}, {"decay", b.decay}});
  return out;
}

SplitNode split_from_json(const nlohmann::json& j) {
  SplitNode s{j.at("id").get<std::string>(), j.at("tables").get<std::vector<TableId>>(), {}};
  if (j.contains("children")) {
    for (const auto& c : j.at("children")) s.children.push_back(split_from_json(c));
  }
  return s;
}

nlohmann::json split_to_json(const SplitNode& s) {
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : s.children) children.push_back(split_to_json(c));
  return {{"id", s.id}, {"tables", s.tables}, {"children", children}};
}

}  // namespace

WorkflowSpec default_workflow_spec(double scale) {
  if (!(scale > 0)) throw GenerationError("scale must be positive");
  WorkflowSpec spec;
  spec.seed = 20240611;
  spec.depgraph.tables = {"FINDocs", "DOCPARSE", "DOCMETA", "PAGES",   "FILINGS", "SECTNS",  "TBLS",
                          "TBLROWS", "TBLCELLS", "NARR",    "SENTS",   "ENTS",    "ENTRES",  "F10WMTR",
                          "MTRCAND", "MTRCTX",   "MTRUNIT", "MTRPER",  "MTRVAL",  "MTRCS",   "MTRNORM",
                          "MTRAGG",  "MTRXBRL",  "KBFACTS", "KBEXPORT"};
  spec.depgraph.edges = {
      {"FINDocs", "DOCPARSE"}, {"DOCPARSE", "DOCMETA"}, {"DOCPARSE", "PAGES"},   {"PAGES", "FILINGS"},
      {"DOCMETA", "FILINGS"},  {"PAGES", "SECTNS"},     {"DOCMETA", "SECTNS"},   {"SECTNS", "TBLS"},
      {"TBLS", "TBLROWS"},     {"TBLROWS", "TBLCELLS"}, {"SECTNS", "NARR"},      {"NARR", "SENTS"},
      {"SENTS", "ENTS"},       {"FILINGS", "ENTS"},     {"ENTS", "ENTRES"},      {"TBLCELLS", "ENTRES"},
      {"TBLCELLS", "F10WMTR"}, {"SENTS", "MTRCAND"},    {"ENTRES", "MTRCTX"},    {"MTRCAND", "MTRCTX"},
      {"F10WMTR", "MTRUNIT"},  {"F10WMTR", "MTRPER"},   {"MTRCAND", "MTRVAL"},   {"MTRUNIT", "MTRVAL"},
      {"MTRPER", "MTRVAL"},    {"F10WMTR", "MTRCS"},    {"MTRCTX", "MTRCS"},     {"MTRCS", "MTRNORM"},
      {"MTRVAL", "MTRNORM"},   {"MTRNORM", "MTRAGG"},   {"MTRNORM", "MTRXBRL"},  {"MTRAGG", "KBFACTS"},
      {"MTRXBRL", "KBFACTS"},  {"KBFACTS", "KBEXPORT"},
  };
  spec.splits = {
      {"sp1", {"FINDocs", "DOCPARSE", "DOCMETA", "PAGES", "FILINGS"}, {}},
      {"sp2", {"SECTNS", "TBLS", "TBLROWS", "TBLCELLS", "NARR", "SENTS", "ENTS", "ENTRES"}, {}},
      {"sp3",
       {"F10WMTR", "MTRCAND", "MTRCTX", "MTRUNIT", "MTRPER", "MTRVAL", "MTRCS", "MTRNORM", "MTRAGG", "MTRXBRL",
        "KBFACTS", "KBEXPORT"},
       {{"sp4", {"F10WMTR", "MTRCAND", "MTRCTX", "MTRUNIT", "MTRPER", "MTRVAL"}, {}},
        {"sp5", {"MTRCS", "MTRNORM", "MTRAGG", "MTRXBRL", "KBFACTS", "KBEXPORT"}, {}}}},
  };
  spec.fan_in = {{1, 9, 0.99, 0.5}, {10, 100, 0.0094, 0.9}, {101, 450, 0.0006, 0.995}};

  // Rows and clusters per table, in declaration order.
  using Shape = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
  auto profile = [&](std::string name, std::uint32_t count, const Shape& shape, bool scale_rows) {
    GroupProfile g;
    g.name = std::move(name);
    g.count = count;
    g.scale_rows = scale_rows;
    for (std::size_t t = 0; t < shape.size(); ++t) {
      if (shape[t].first == 0) continue;
      g.rows[spec.depgraph.tables[t]] = shape[t].first;
      g.clusters[spec.depgraph.tables[t]] = shape[t].second;
    }
    spec.groups.push_back(std::move(g));
  };

  // Cluster counts are powers of two so parent ranges and widened ranges
  // line up across tables.
  const Shape large = {
      {8, 1},       {64, 8},      {32, 8},      {640, 64},    {64, 8},      {3000, 256},  {2400, 256},
      {6000, 256},  {10000, 256}, {3000, 256},  {7000, 256},  {5000, 256},  {3600, 256},  {8000, 2048},
      {7000, 2048}, {6000, 2048}, {4000, 2048}, {4000, 2048}, {9000, 2048}, {6000, 2048}, {7000, 2048},
      {3000, 256},  {4500, 512},  {4500, 64},   {2000, 16}};
  profile("large", 2, large, true);
  // As large, with a hub table in sp5 that makes sp3 one induced component.
  Shape hub = large;
  hub[19] = {40, 1};
  for (std::size_t t = 20; t < hub.size(); ++t) hub[t].first = hub[t].first * 2 / 3;
  profile("hub", 1, hub, true);
  profile("mid", 40,
          {{2, 1},     {8, 2},     {4, 2},     {32, 4},    {8, 2},     {120, 16},  {100, 16},  {240, 16}, {400, 16},
           {120, 16},  {280, 16},  {200, 16},  {140, 16},  {280, 64},  {250, 64},  {220, 64},  {140, 64}, {140, 64},
           {320, 64},  {220, 64},  {250, 64},  {110, 32},  {160, 32},  {160, 32},  {70, 16}},
          false);
  profile("small", 400,
          {{1, 1}, {2, 1}, {1, 1}, {3, 1}, {1, 1}, {3, 1}, {2, 1}, {4, 1}, {6, 1}, {2, 1}, {4, 1}, {3, 1}, {2, 1},
           {3, 1}, {3, 1}, {2, 1}, {1, 1}, {1, 1}, {3, 1}, {2, 1}, {2, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}},
          false);

  for (auto& g : spec.groups) {
    if (g.scale_rows) {
      for (auto* m : {&g.rows, &g.clusters}) {
        for (auto& [table, v] : *m) v = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(v * scale)));
      }
    } else {
      g.count = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::llround(g.count * scale)));
    }
  }
  return spec;
}

void check_spec(const WorkflowSpec& spec) {
  auto topo = topology(spec.depgraph);
  check_bands(spec.fan_in, "fan_in");
  for (const auto& [table, bands] : spec.table_fan_in) check_bands(bands, "table_fan_in." + table);
  for (const auto& profile : spec.groups) {
    for (const auto& [table, rows] : profile.rows) {
      if (std::find(spec.depgraph.tables.begin(), spec.depgraph.tables.end(), table) == spec.depgraph.tables.end()) {
        throw GenerationError("group '" + profile.name + "' sets rows of unknown table '" + table + "'");
      }
    }
    for (std::size_t t = 0; t < spec.depgraph.tables.size(); ++t) {
      auto rows_of = [&](std::size_t i) {
        auto it = profile.rows.find(spec.depgraph.tables[i]);
        return it == profile.rows.end() ? std::uint64_t{0} : it->second;
      };
      if (rows_of(t) == 0 || topo.parents[t].empty()) continue;
      bool upstream = std::any_of(topo.parents[t].begin(), topo.parents[t].end(),
                                  [&](std::size_t u) { return rows_of(u) > 0; });
      if (!upstream) {
        throw GenerationError("group '" + profile.name + "': table '" + spec.depgraph.tables[t] +
                              "' has rows but every upstream table has zero rows");
      }
    }
  }
}

ProvGraph generate(const WorkflowSpec& spec) {
  check_spec(spec);
  auto topo = topology(spec.depgraph);
  const auto num_tables = spec.depgraph.tables.size();

  std::vector<GroupLayout> layouts;
  std::uint64_t next_id = 1;
  for (const auto& profile : spec.groups) {
    for (std::uint32_t copy = 0; copy < profile.count; ++copy) {
      GroupLayout g{std::vector<std::uint64_t>(num_tables), std::vector<std::uint64_t>(num_tables),
                    std::vector<std::uint64_t>(num_tables)};
      for (auto t : topo.order) {
        const auto& name = spec.depgraph.tables[t];
        auto r = profile.rows.find(name);
        auto c = profile.clusters.find(name);
        g.rows[t] = r == profile.rows.end() ? 0 : r->second;
        g.clusters[t] = std::clamp<std::uint64_t>(c == profile.clusters.end() ? 1 : c->second, 1,
                                                  std::max<std::uint64_t>(g.rows[t], 1));
        g.first_id[t] = next_id;
        next_id += g.rows[t];
      }
      layouts.push_back(std::move(g));
    }
  }

  // Per band list: derived rows overall and rows able to reach each band.
  std::map<const FanInBand*, std::pair<double, std::vector<double>>> reach;
  for (std::size_t t = 0; t < num_tables; ++t) {
    if (topo.parents[t].empty()) continue;
    auto bands = bands_of(spec, t);
    auto& [total, able] = reach[bands.data()];
    able.resize(bands.size());
    for (const auto& g : layouts) {
      auto capacity = upstream_rows(g, topo, t);
      total += static_cast<double>(g.rows[t]);
      for (std::size_t b = 0; b < bands.size(); ++b) {
        if (capacity >= bands[b].min) able[b] += static_cast<double>(g.rows[t]);
      }
    }
  }
  std::vector<std::vector<double>> boost(num_tables);
  for (std::size_t t = 0; t < num_tables; ++t) {
    if (topo.parents[t].empty()) continue;
    const auto& [total, able] = reach[bands_of(spec, t).data()];
    for (double a : able) boost[t].push_back(a > 0 ? total / a : 1.0);
  }

  std::vector<std::vector<ProvTriple>> per_table(num_tables);
  parallel_for(num_tables, ExecPolicy::parallel,
               [&](std::size_t t) { per_table[t] = generate_table(spec, topo, layouts, boost[t], t); });

  ProvGraph graph;
  std::size_t total = 0;
  for (const auto& v : per_table) total += v.size();
  graph.triples.reserve(total);
  for (auto t : topo.order) {
    std::move(per_table[t].begin(), per_table[t].end(), std::back_inserter(graph.triples));
  }
  graph.item_table.reserve(next_id);
  for (const auto& g : layouts) {
    for (auto t : topo.order) {
      for (std::uint64_t j = 0; j < g.rows[t]; ++j) graph.item_table.emplace(DataItemId(g.first_id[t] + j), spec.depgraph.tables[t]);
    }
  }
  return graph;
}

ProvGraph replicate(const ProvGraph& g, std::uint32_t k) {
  if (k == 0) throw GenerationError("replication factor must be at least 1");
  std::uint64_t max_id = 0;
  for (const auto& t : g.triples) max_id = std::max({max_id, t.src.value, t.dst.value});
  for (const auto& [item, table] : g.item_table) max_id = std::max(max_id, item.value);
  constexpr auto limit = std::numeric_limits<std::uint64_t>::max();
  if (k > 1 && (max_id == limit || static_cast<std::uint64_t>(k - 1) > (limit - max_id) / (max_id + 1))) {
    throw GenerationError("replicated ids overflow 64 bits");
  }
  const std::uint64_t stride = max_id + 1;
  ProvGraph out;
  out.triples.reserve(g.triples.size() * k);
  out.item_table.reserve(g.item_table.size() * k);
  for (std::uint32_t copy = 0; copy < k; ++copy) {
    const std::uint64_t offset = copy * stride;
    for (const auto& t : g.triples) {
      out.triples.push_back({DataItemId(t.src.value + offset), DataItemId(t.dst.value + offset), t.op, t.meta});
    }
    for (const auto& [item, table] : g.item_table) out.item_table.emplace(DataItemId(item.value + offset), table);
  }
  return out;
}

std::vector<double> fan_in_census(const ProvGraph& g, std::span<const FanInBand> bands) {
  std::unordered_map<std::uint64_t, std::uint32_t> fan_in;
  for (const auto& t : g.triples) ++fan_in[t.dst.value];
  std::vector<double> share(bands.size(), 0.0);
  if (fan_in.empty()) return share;
  for (const auto& [item, k] : fan_in) {
    for (std::size_t b = 0; b < bands.size(); ++b) {
      if (k >= bands[b].min && k <= bands[b].max) share[b] += 1.0;
    }
  }
  for (auto& s : share) s /= static_cast<double>(fan_in.size());
  return share;
}

WorkflowSpec parse_workflow_spec(std::string_view json_text, const std::string& source) {
  auto j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw FormatError(source + ": not valid JSON");
  try {
    WorkflowSpec spec;
    spec.seed = j.value("seed", std::uint64_t{1});
    spec.depgraph.tables = j.at("tables").get<std::vector<TableId>>();
    for (const auto& e : j.at("edges")) spec.depgraph.edges.emplace_back(e.at(0).get<TableId>(), e.at(1).get<TableId>());
    if (j.contains("splits")) {
      for (const auto& s : j.at("splits")) spec.splits.push_back(split_from_json(s));
    }
    spec.fan_in = bands_from_json(j.at("fan_in"));
    if (j.contains("table_fan_in")) {
      for (const auto& [table, bands] : j.at("table_fan_in").items()) spec.table_fan_in[table] = bands_from_json(bands);
    }
    for (const auto& p : j.at("groups")) {
      GroupProfile profile;
      profile.name = p.value("name", std::string("group"));
      profile.count = p.value("count", 1u);
      profile.rows = p.at("rows").get<std::map<TableId, std::uint64_t>>();
      if (p.contains("clusters")) profile.clusters = p.at("clusters").get<std::map<TableId, std::uint64_t>>();
      profile.scale_rows = p.value("scale_rows", true);
      spec.groups.push_back(std::move(profile));
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(source + ": " + e.what());
  }
}

nlohmann::json workflow_spec_json(const WorkflowSpec& spec) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [p, c] : spec.depgraph.edges) edges.push_back({p, c});
  nlohmann::json splits = nlohmann::json::array();
  for (const auto& s : spec.splits) splits.push_back(split_to_json(s));
  nlohmann::json table_fan_in = nlohmann::json::object();
  for (const auto& [table, bands] : spec.table_fan_in) table_fan_in[table] = bands_to_json(bands);
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : spec.groups) {
    groups.push_back({{"name", g.name}, {"count", g.count}, {"rows", g.rows}, {"clusters", g.clusters},
                      {"scale_rows", g.scale_rows}});
  }
  return {{"seed", spec.seed},         {"tables", spec.depgraph.tables}, {"edges", edges},
          {"splits", splits},          {"fan_in", bands_to_json(spec.fan_in)},
          {"table_fan_in", table_fan_in}, {"groups", groups}};
}

}  // namespace lineagelab
