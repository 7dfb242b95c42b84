// Copyright 2026 The dirgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dirgame/pipeline.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "dirgame/partitions.hpp"

namespace dirgame {
namespace {

using json = nlohmann::json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json to_json(const ValidationReport& v) {
  json violations = json::array();
  for (const Violation& x : v.violations) {
    violations.push_back({{"kind", std::string(to_string(x.kind))},
                          {"vertex", x.vertex},
                          {"witness", x.witness},
                          {"message", x.message}});
  }
  return {{"ok", v.ok}, {"vertices_explored", v.vertices_explored}, {"violations", violations}};
}

json to_json(const BoundCheck& c) {
  return {{"family", c.family}, {"n", c.n},           {"t", c.t},
          {"count", c.count},   {"tail", c.tail},     {"tail_ucl", c.tail_ucl},
          {"bound", c.bound},   {"verdict", to_string(c.verdict)}, {"note", c.note}};
}

json optional_int(const std::optional<int>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

InspectOutput run_inspect(const Config& config) {
  const GameGraph& g = *config.graph;
  const VertexId z = config.start();
  const int depth = config.run.depth;
  ReachOptions opts;
  opts.max_vertices = config.run.max_vertices;

  InspectOutput out;
  json& r = out.report;
  r["family"] = g.family();
  r["max_out_degree"] = g.max_out_degree();
  r["transitivity_radius"] = optional_int(g.transitivity_radius());
  r["start"] = g.format_vertex(z);
  r["depth"] = depth;
  r["equivalence_label"] = g.equivalence_label(z);

  const ValidationReport validation = validate_region(g, z, depth, opts);
  const ReachSet rs = reach_set(g, z, depth, opts);
  json counts = json::array();
  for (std::size_t c : rs.counts()) counts.push_back(c);
  r["level_counts"] = counts;
  r["total"] = rs.total();

  std::size_t dmin = 0, dmax = 0, dsum = 0, dcount = 0;
  for (int i = 0; i < depth; ++i) {
    for (const VertexId& v : rs.levels[i]) {
      std::size_t deg = 0;
      try {
        deg = g.out_neighbors(v).size();
      } catch (const StructuralError&) {
        continue;
      }
      dmin = dcount == 0 ? deg : std::min(dmin, deg);
      dmax = std::max(dmax, deg);
      dsum += deg;
      ++dcount;
    }
  }
  r["degree"] = {{"min", dmin},
                 {"max", dmax},
                 {"mean", dcount ? static_cast<double>(dsum) / static_cast<double>(dcount) : 0.0},
                 {"vertices", dcount}};
  r["validation"] = to_json(validation);
  out.ok = validation.ok;
  return out;
}

SolveOutput run_solve(const Config& config) {
  const int n = config.run.n.front();
  if (n < 1) throw DomainError("n must be >= 1");
  const VertexId z = config.start();
  const PayoffField field = config.field(config.run.seed);
  SolverKind kind = config.run.solver;
  if (kind == SolverKind::kAuto) {
    kind = config.graph->as_tree() && n > 20 ? SolverKind::kSearch : SolverKind::kDp;
  }
  const ValueSolution sol =
      ValueSolver(config.graph, z, n, kind, config.run.max_vertices).solve(field);

  SolveOutput out;
  out.value = sol.value;
  out.solution = {{"start", config.graph->format_vertex(sol.start)},
                  {"n", sol.n},
                  {"value", sol.value},
                  {"total", sol.total},
                  {"table_size", sol.table_size},
                  {"solver", to_string(kind)},
                  {"seed", config.run.seed},
                  {"payoffs", field.distribution().describe()},
                  {"strategies", kind == SolverKind::kDp}};
  if (kind == SolverKind::kDp) {
    std::vector<std::tuple<int, VertexId, int>> rows;
    for (const auto* table : {&sol.strategy1, &sol.strategy2}) {
      for (const auto& [key, choice] : *table) rows.emplace_back(key.stage, key.vertex, choice);
    }
    std::sort(rows.begin(), rows.end());
    out.strategies_csv = "vertex,stage,choice\n";
    for (const auto& [stage, v, choice] : rows) {
      out.strategies_csv += csv_field(config.graph->format_vertex(v)) + "," +
                            std::to_string(stage) + "," + std::to_string(choice) + "\n";
    }
  }
  return out;
}

ExperimentOutput run_experiment_pipeline(const Config& config) {
  const ExperimentConfig exp = config.experiment();
  const ExperimentResult result = run_experiment(exp);
  ExperimentOutput out;
  out.samples_csv = samples_csv(result.records);
  out.partial = result.partial;
  out.error_kind = result.error_kind;

  json& report = out.report;
  report["version"] = kVersion;
  json echo = config.raw;
  // thread count does not change results; keep reports identical across it
  if (echo.contains("run") && echo["run"].is_object()) echo["run"].erase("threads");
  report["config"] = echo;
  report["partial"] = result.partial;
  report["error"] = result.partial ? json(result.error) : json(nullptr);
  report["records"] = result.records.size();
  report["notes"] = json::array(
      {"bound checks center at the empirical mean of V_n, not at E[V_n]",
       "tail verdicts use one-sided Clopper-Pearson upper limits at level " +
           std::to_string(config.bounds.level),
       "verdict uninformative means the theoretical bound is >= 1 (or, for subadditivity, "
       "that the slack makes the right-hand side non-positive)"});

  std::vector<SummaryRow> rows;
  std::vector<SummaryStats> summaries;
  if (!result.records.empty()) summaries = summarize(result.records);
  json jsum = json::array();
  for (const SummaryStats& s : summaries) {
    jsum.push_back({{"n", s.n}, {"count", s.count}, {"mean", s.mean}, {"var", s.var}});
  }
  report["summaries"] = jsum;
  auto srows = summary_rows(summaries);
  rows.insert(rows.end(), srows.begin(), srows.end());

  json jchecks = json::array();
  report["subadditivity"] = nullptr;
  report["bootstrap_condition"] = nullptr;
  report["vinfty"] = nullptr;
  report["oscillation"] = nullptr;

  if (!result.partial) {
    const GraphPtr& g = config.graph;
    const BoundsSection& b = config.bounds;
    std::map<int, std::vector<double>> cache;
    for (const SummaryStats& s : summaries) cache[s.n] = s.values;
    auto values_at = [&](int n) -> const std::vector<double>& {
      auto it = cache.find(n);
      if (it == cache.end()) it = cache.emplace(n, sample_values(exp, n)).first;
      return it->second;
    };
    int n_profile = 1;
    for (const SummaryStats& s : summaries) n_profile = std::max(n_profile, s.n);
    if (b.subadditivity) n_profile = std::max(n_profile, b.subadditivity->n);
    std::optional<TransientProfile> profile;
    auto get_profile = [&]() -> const TransientProfile& {
      if (!profile) {
        ReachOptions opts;
        opts.max_vertices = config.run.max_vertices;
        profile = transient_profile(*g, default_partition(g), n_profile, opts);
      }
      return *profile;
    };

    std::vector<BoundCheck> checks;
    if (b.transient_tail && !b.t_grid.empty()) {
      for (const SummaryStats& s : summaries) {
        auto c = check_transient_tail(s, get_profile().h[s.n], b.t_grid, b.level);
        checks.insert(checks.end(), c.begin(), c.end());
      }
    }
    if (b.double_exp_tail && !b.t_grid.empty()) {
      for (const SummaryStats& s : summaries) {
        auto c = check_double_exp_tail(s, b.t_grid, b.level);
        checks.insert(checks.end(), c.begin(), c.end());
      }
    }
    if (b.bootstrap) {
      if (g->family() != "dary") throw SpecError("the bootstrap check needs the dary family");
      const BootstrapSection& bs = *b.bootstrap;
      const BootstrapCondition cond = bootstrap_condition(g->max_out_degree(), bs.n, bs.k, bs.t);
      report["bootstrap_condition"] = {{"lhs", cond.lhs}, {"rhs", cond.rhs},
                                       {"slack", cond.slack}, {"holds", cond.holds}};
      ExperimentConfig batch = exp;
      batch.master_seed = mix64(exp.master_seed ^ 0x626f6f7473747261ULL);
      const std::vector<double> base = bs.n > bs.k ? sample_values(batch, bs.n - bs.k)
                                                   : std::vector<double>{0.0};
      const double mean_base = summarize_values(bs.n - bs.k, base).mean;
      auto c = check_bootstrap(g->max_out_degree(), bs.n, bs.k, bs.t, values_at(bs.n), mean_base,
                               b.level);
      checks.insert(checks.end(), c.begin(), c.end());
    }
    for (const BoundCheck& c : checks) jchecks.push_back(to_json(c));
    auto crows = summary_rows(checks);
    rows.insert(rows.end(), crows.begin(), crows.end());

    if (b.subadditivity) {
      const SubadditivitySection& ss = *b.subadditivity;
      const SummaryStats sm = summarize_values(ss.m, values_at(ss.m));
      const SummaryStats sn = summarize_values(ss.n, values_at(ss.n));
      const SummaryStats smn = summarize_values(ss.m + ss.n, values_at(ss.m + ss.n));
      const EpsilonRule rule{b.transience.eps_scale, b.transience.eps_exponent};
      const double eps = rule(ss.n, b.delta);
      const TransientProfile& p = get_profile();
      const double ps = psi(ss.n, eps, p.h[ss.n], p.reach2n_max[ss.n]);
      const double slack = g->as_tree() ? tree_subadditivity_slack(ss.n, ps, eps)
                                        : 2.0 * ss.n * (ps + eps) + ss.extra_slack;
      const SubadditivityCheck sc = check_subadditivity(sm, sn, smn, slack);
      report["subadditivity"] = {{"m", sc.m},           {"n", sc.n},
                                 {"count", sc.count},   {"lhs", sc.lhs},
                                 {"split", sc.split},   {"slack_term", sc.slack_term},
                                 {"stat_slack", sc.stat_slack}, {"rhs", sc.rhs},
                                 {"margin", sc.margin}, {"holds", sc.holds},
                                 {"epsilon", eps},      {"psi", ps},
                                 {"verdict", to_string(sc.verdict)}};
      rows.push_back(summary_row(sc));
    }
    if (b.vinfty) {
      std::size_t distinct = summaries.size();
      if (distinct >= 3) {
        const VinftyEstimate v = estimate_vinfty(summaries, b.delta, config.run.seed);
        report["vinfty"] = {{"delta", v.delta},         {"estimate", v.estimate},
                            {"slope", v.slope},         {"ci_low", v.ci_low},
                            {"ci_high", v.ci_high},     {"largest_n", v.largest_n},
                            {"largest_n_mean", v.largest_n_mean}, {"resamples", v.resamples}};
      }
    }
    if (b.oscillation) {
      const OscillationSection& os = *b.oscillation;
      const OscillationReport o = counterexample_oscillation(exp, os.n_branchy, os.n_pathy, os.margin);
      report["oscillation"] = {{"n_branchy", o.n_branchy},
                               {"n_pathy", o.n_pathy},
                               {"mean_branchy", o.branchy.mean},
                               {"mean_pathy", o.pathy.mean},
                               {"half_width_branchy", o.half_width_branchy},
                               {"half_width_pathy", o.half_width_pathy},
                               {"margin", o.margin},
                               {"oscillates", o.oscillates}};
    }
  }
  report["checks"] = jchecks;
  out.summary_csv = summary_csv(rows);
  return out;
}

json run_transience(const Config& config) {
  const GraphPtr& g = config.graph;
  const TransienceSection& ts = config.bounds.transience;
  AdaptedFamily fam;
  if (ts.partition == "default") {
    fam = default_partition(g);
  } else if (ts.partition == "tree") {
    fam = tree_partition(g);
  } else if (ts.partition == "oriented") {
    fam = oriented_partition(g);
  } else if (ts.partition == "trivial") {
    fam = trivial_partition(g);
  } else {
    throw SpecError("bounds.transience.partition must be default, tree, oriented or trivial");
  }
  std::vector<int> range;
  for (int n = ts.n_min; n <= ts.n_max; ++n) range.push_back(n);
  ReachOptions opts;
  opts.max_vertices = config.run.max_vertices;
  const TransienceReport r = check_delta_transient(
      *g, fam, config.bounds.delta, range, EpsilonRule{ts.eps_scale, ts.eps_exponent}, opts);
  json samples = json::array();
  for (const TransienceSample& s : r.samples) {
    samples.push_back({{"n", s.n},
                       {"epsilon", s.epsilon},
                       {"psi", s.psi},
                       {"sum", s.sum},
                       {"c_n", s.c_n},
                       {"h", s.h},
                       {"reach2n", static_cast<double>(s.reach2n)}});
  }
  return {{"version", kVersion},
          {"family", g->family()},
          {"partition", to_string(fam.kind)},
          {"delta", r.delta},
          {"eps_scale", r.eps_scale},
          {"eps_exponent", r.eps_exponent},
          {"verdict", to_string(r.verdict)},
          {"note", r.note},
          {"samples", samples}};
}

}  // namespace dirgame
