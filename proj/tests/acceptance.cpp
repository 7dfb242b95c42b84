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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dirgame/config.hpp"
#include "dirgame/errors.hpp"
#include "dirgame/generators.hpp"
#include "dirgame/montecarlo.hpp"
#include "dirgame/partitions.hpp"
#include "dirgame/pipeline.hpp"
#include "dirgame/value.hpp"

using namespace dirgame;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(const char* name, bool ok, const std::string& detail, Clock::time_point start) {
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s  %-22s %s (%.1f s)\n", ok ? "PASS" : "FAIL", name, detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

struct Instance {
  std::string family;
  GraphPtr graph;
  PayoffDistribution dist = PayoffDistribution::uniform();
  std::uint64_t seed = 0;
  int n = 1;
};

GraphPtr random_graph(int which, std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  switch (which) {
    case 0:
      return make_dary_tree({pick(2, 3)});
    case 1: {
      CounterexampleSpec s;
      std::int64_t a = pick(1, 4);
      for (int i = 0, m = pick(1, 2); i < m; ++i) {
        const std::int64_t b = a + pick(1, 5);
        s.intervals.emplace_back(a, b);
        a = b + pick(1, 3);
      }
      return make_counterexample_tree(s);
    }
    case 2: {
      LevelSet L;
      L.levels = {0};
      std::int64_t gap = pick(1, 2);
      while (L.levels.back() + gap <= 8) {
        L.levels.push_back(L.levels.back() + gap);
        gap += pick(0, 1);
      }
      return make_controlled_tree({L, pick(0, 1) == 1});
    }
    case 3: {
      if (pick(0, 3) == 0) return make_line();
      std::vector<IntVec> pool = {{1, 0}, {0, 1}, {1, 1}, {2, -1}, {-1, 2}};
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(pick(1, 3));
      return make_oriented_lattice({pool, {1, 1}, {}, {}, {}, "lattice"});
    }
    case 4:
      if (pick(0, 1) == 0) {
        return make_tiling({{1, 0}, {0, 1}, {{0, 0}}, {{0, 1, 0}, {0, 0, 1}}, {}, 0});
      }
      return make_tiling({{2, 1}, {-1, 2}, {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
                          {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {2, 1, 0}, {2, 0, 1}, {3, 0, 1}},
                          {}, 6});
    default: {
      // random H with every degree in [1, 3]
      for (;;) {
        const int k = pick(2, 5);
        HChainSpec s;
        for (int i = 0; i < k; ++i) s.vertices.push_back(std::string(1, char('a' + i)));
        std::vector<int> deg(k, 0);
        for (int i = 0; i < k; ++i) {
          for (int j = i + 1; j < k; ++j) {
            if (pick(0, 1) && deg[i] < 3 && deg[j] < 3) {
              s.edges.emplace_back(s.vertices[i], s.vertices[j]);
              ++deg[i];
              ++deg[j];
            }
          }
        }
        if (std::all_of(deg.begin(), deg.end(), [](int d) { return d >= 1; })) {
          return make_h_chain(s);
        }
      }
    }
  }
}

std::vector<Instance> oracle_instances(int count) {
  static const char* names[] = {"dary", "counterexample", "controlled", "lattice", "tiling",
                                "hchain"};
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(0x5eed0000 + i);
    Instance inst;
    inst.family = names[i % 6];
    inst.graph = random_graph(i % 6, rng);
    switch ((i / 6) % 4) {
      case 0: inst.dist = PayoffDistribution::bernoulli(0.5); break;
      case 1: inst.dist = PayoffDistribution::bernoulli(0.3); break;
      case 2: inst.dist = PayoffDistribution::discrete({0.0, 0.25, 0.5, 1.0}, {1, 2, 3, 1}); break;
      default: inst.dist = PayoffDistribution::uniform(); break;
    }
    inst.seed = rng();
    inst.n = 1 + static_cast<int>(rng() % 6);
    out.push_back(inst);
  }
  return out;
}

void oracle_equivalence(const std::vector<Instance>& insts) {
  const auto t0 = Clock::now();
  std::set<std::string> families;
  int mismatches = 0, exact = 0, approx = 0, max_degree = 0;
  double worst = 0.0;
  for (const Instance& in : insts) {
    families.insert(in.family);
    max_degree = std::max(max_degree, in.graph->max_out_degree());
    PayoffField f(in.seed, in.dist);
    const VertexId z = in.graph->initial();
    const auto dp = solve_value(in.graph, f, z, in.n);
    const double fast = ValueSolver(in.graph, z, in.n).value(f);
    const auto bf = brute_force_value(*in.graph, f, z, in.n);
    if (in.dist.atomic()) {
      ++exact;
      if (!bf.exact || dp.total != bf.total || dp.value != bf.value || fast != bf.value) {
        ++mismatches;
      }
    } else {
      ++approx;
      const double e = std::max(std::abs(dp.value - bf.value), std::abs(fast - bf.value));
      worst = std::max(worst, e);
      if (e > 1e-12) ++mismatches;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool ok = mismatches == 0 && families.size() == 6 && max_degree <= 3 && secs < 120;
  report("oracle-equivalence", ok,
         std::to_string(insts.size()) + " instances, " + std::to_string(families.size()) +
             " families, " + std::to_string(exact) + " exact + " + std::to_string(approx) +
             " uniform, mismatches " + std::to_string(mismatches) +
             fmt(", worst uniform error %.1e", worst),
         t0);
}

void value_differences(const std::vector<Instance>& insts) {
  const auto t0 = Clock::now();
  int checks = 0, violations = 0;
  for (const Instance& in : insts) {
    PayoffField f(in.seed, in.dist);
    const VertexId z = in.graph->initial();
    std::vector<double> v(in.n + 1, 0.0);
    for (int m = 1; m <= in.n; ++m) v[m] = solve_value(in.graph, f, z, m).value;
    for (int k = 1; k <= in.n; ++k) {
      ++checks;
      if (std::abs(v[in.n] - v[in.n - k]) > static_cast<double>(k) / in.n + 1e-12) ++violations;
      const auto r = value_difference_check(in.graph, f, z, in.n, k);
      if (!r.ok || r.difference != std::abs(v[in.n] - v[in.n - k])) ++violations;
    }
  }
  report("value-difference", violations == 0,
         std::to_string(checks) + " (instance, k) pairs, violations " + std::to_string(violations),
         t0);
}

// every pure strategy of the opponent against a fixed strategy, keyed by history
struct Enumeration {
  double best = 0.0;
  std::size_t strategies = 0;
  bool all_ok = true;
};

Enumeration enumerate_opponent(const GameGraph& g, const PayoffField& f, const VertexId& z,
                               int n, int fixed_player, const Strategy& fixed, double target) {
  using History = std::vector<VertexId>;
  std::vector<std::pair<History, int>> nodes;
  std::function<void(History&)> walk = [&](History& h) {
    const int stage = static_cast<int>(h.size()) - 1;
    if (stage == n) return;
    const auto nbrs = g.out_neighbors(h.back());
    const bool fixed_turn = (stage % 2 == 0) == (fixed_player == 1);
    if (fixed_turn) {
      h.push_back(nbrs.at(fixed(h.back(), stage, h)));
      walk(h);
      h.pop_back();
      return;
    }
    nodes.emplace_back(h, static_cast<int>(nbrs.size()));
    for (const auto& w : nbrs) {
      h.push_back(w);
      walk(h);
      h.pop_back();
    }
  };
  History h{z};
  walk(h);

  Enumeration e;
  e.best = fixed_player == 1 ? 1e300 : -1e300;
  std::vector<int> digits(nodes.size(), 0);
  for (;;) {
    std::map<History, int> table;
    for (std::size_t i = 0; i < nodes.size(); ++i) table[nodes[i].first] = digits[i];
    Strategy opp = [&table](const VertexId&, int, const History& hist) { return table.at(hist); };
    const auto t = fixed_player == 1 ? play(g, f, fixed, opp, z, n) : play(g, f, opp, fixed, z, n);
    ++e.strategies;
    if (fixed_player == 1) {
      e.best = std::min(e.best, t.total);
      e.all_ok = e.all_ok && t.total >= target;
    } else {
      e.best = std::max(e.best, t.total);
      e.all_ok = e.all_ok && t.total <= target;
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == nodes[i].second) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return e;
}

void security_levels(const std::vector<Instance>& insts) {
  const auto t0 = Clock::now();
  int used = 0, failures = 0;
  std::size_t strategies = 0;
  for (const Instance& base : insts) {
    if (used == 50) break;
    if (!base.dist.atomic()) continue;
    Instance in = base;
    in.n = 1 + (used % 4);
    PayoffField f(in.seed, in.dist);
    const VertexId z = in.graph->initial();
    const auto sol = solve_value(in.graph, f, z, in.n);
    const auto p1 = enumerate_opponent(*in.graph, f, z, in.n, 1, solution_strategy(sol, 1),
                                       sol.total);
    const auto p2 = enumerate_opponent(*in.graph, f, z, in.n, 2, solution_strategy(sol, 2),
                                       sol.total);
    strategies += p1.strategies + p2.strategies;
    if (!p1.all_ok || !p2.all_ok || p1.best != sol.total || p2.best != sol.total) ++failures;
    ++used;
  }
  report("security-levels", used == 50 && failures == 0,
         std::to_string(used) + " instances (n<=4), " + std::to_string(strategies) +
             " opponent strategies played, failures " + std::to_string(failures),
         t0);
}

void avoidance() {
  const auto t0 = Clock::now();
  auto tree = make_dary_tree({2});
  PayoffField f(1, PayoffDistribution::uniform());
  std::mt19937_64 rng(2024);
  int plays = 0, hits = 0, sets = 0;
  for (int k : {2, 4, 6, 8}) {
    const int cap = 1 << (k / 2);
    for (int rep = 0; rep < 100; ++rep) {
      const int size = static_cast<int>(rng() % cap);
      std::set<VertexId> s;
      while (static_cast<int>(s.size()) < size) {
        std::vector<std::int64_t> w(k);
        for (auto& x : w) x = static_cast<std::int64_t>(rng() & 1);
        s.insert(VertexId(w));
      }
      std::vector<VertexId> targets(s.begin(), s.end());
      const Strategy s2 = avoidance_strategy(*tree, VertexId{}, k, targets);
      ++sets;
      for (int mask = 0; mask < cap; ++mask) {
        const Strategy s1 = [mask](const VertexId&, int stage, const std::vector<VertexId>&) {
          return (mask >> (stage / 2)) & 1;
        };
        const auto t = play(*tree, f, s1, s2, VertexId{}, k);
        ++plays;
        if (s.count(t.states.back())) ++hits;
      }
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report("avoidance", hits == 0 && secs < 60,
         std::to_string(sets) + " target sets, " + std::to_string(plays) +
             " Player 1 choice sequences, hits " + std::to_string(hits),
         t0);
}

void transient_speeds() {
  const auto t0 = Clock::now();
  int bad = 0;
  auto line = make_line();
  auto lp = transient_profile(*line, oriented_partition(line), 50);
  for (int n = 1; n <= 50; ++n) bad += lp.h[n] != 2 * n;
  auto tree = make_dary_tree({2});
  auto tp = transient_profile(*tree, tree_partition(tree), 50);
  for (int n = 1; n <= 50; ++n) bad += tp.h[n] != n;
  // enumerated cross-check of the closed form on small n
  for (int n = 1; n <= 8; ++n) {
    auto rs = reach_set(*tree, VertexId{}, n);
    auto fam = tree_partition(tree);
    std::int64_t h = 0;
    for (const auto& level : rs.levels)
      for (const auto& v : level) h = std::max(h, fam.index(VertexId{}, v));
    bad += h != n;
  }
  auto grid = make_grid();
  auto gp = transient_profile(*grid, oriented_partition(grid, {1, 1}), 50);
  for (int n = 1; n <= 50; ++n) {
    bad += gp.h[n] > 2 * oriented_reach_bound(n, 1.0, std::sqrt(2.0)) + 1;
  }
  report("transient-speeds", bad == 0,
         "line h=2n, binary tree h=n, grid h<=2ceil(n sqrt2)+1 for n in [1,50]; mismatches " +
             std::to_string(bad),
         t0);
}

void transience_verdicts() {
  const auto t0 = Clock::now();
  std::vector<int> wide, narrow;
  for (int n = 10; n <= 200; ++n) wide.push_back(n);
  for (int n = 10; n <= 60; ++n) narrow.push_back(n);
  auto line = make_line();
  auto grid = make_grid();
  auto tree = make_dary_tree({2});
  const auto l = check_delta_transient(*line, oriented_partition(line), 0.25, wide);
  const auto g = check_delta_transient(*grid, oriented_partition(grid), 0.25, wide);
  const auto t = check_delta_transient(*tree, tree_partition(tree), 0.25, narrow);
  const bool ok = l.verdict == TransienceVerdict::kAccepted &&
                  g.verdict == TransienceVerdict::kAccepted &&
                  t.verdict == TransienceVerdict::kRejected;
  report("transience-verdicts", ok,
         "line " + to_string(l.verdict) + ", grid " + to_string(g.verdict) + ", binary tree " +
             to_string(t.verdict) + " (delta 0.25)",
         t0);
}

ExperimentConfig tree_experiment(int n, std::size_t samples, std::uint64_t seed) {
  ExperimentConfig c;
  c.graph = make_dary_tree({2});
  c.distribution = PayoffDistribution::bernoulli(0.5);
  c.n_list = {n};
  c.samples = samples;
  c.master_seed = seed;
  c.threads = 1;
  return c;
}

void transient_tail() {
  const auto t0 = Clock::now();
  const auto r = run_experiment(tree_experiment(16, 500, 16016));
  const auto s = summarize(r.records).front();
  const auto checks = check_transient_tail(s, 16, {0.2, 0.3, 0.4}, 0.999);
  int informative = 0, fails = 0;
  std::string detail = "n=16, 500 samples:";
  for (const auto& c : checks) {
    if (c.verdict != Verdict::kUninformative) ++informative;
    if (c.verdict == Verdict::kFail) ++fails;
    detail += fmt(" t=%.1f tail %.3f ucl %.4f bound %.4f", c.t, c.tail, c.tail_ucl, c.bound) +
              " " + to_string(c.verdict) + ";";
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report("transient-tail", !r.partial && fails == 0 && informative > 0 && secs < 600, detail, t0);
}

void bootstrap() {
  const auto t0 = Clock::now();
  const int d = 2, n = 40, k = 4;
  const double t = 0.35;
  const auto cond = bootstrap_condition(d, n, k, t);
  const auto values = sample_values(tree_experiment(n, 300, 404040), n);
  const auto base = sample_values(tree_experiment(n - k, 300, 363636), n - k);
  const double mean_base = summarize_values(n - k, base).mean;
  const auto checks = check_bootstrap(d, n, k, t, values, mean_base, 0.999);
  bool ok = cond.holds;
  std::string detail = fmt("condition %.3f <= %.3f;", cond.lhs, cond.rhs);
  for (const auto& c : checks) {
    ok = ok && c.verdict == Verdict::kPass;
    detail += " " + c.note + fmt(" freq %.3f ucl %.4f bound %.4f", c.tail, c.tail_ucl, c.bound) +
              ";";
  }
  report("bootstrap", ok, detail + fmt(" mean V_40 %.4f, mean V_36 %.4f",
                                       summarize_values(n, values).mean, mean_base), t0);
}

void subadditivity() {
  const auto t0 = Clock::now();
  const int m = 10, n = 10;
  const double delta = 0.25;
  const auto sm = summarize_values(m, sample_values(tree_experiment(m, 500, 1010), m));
  const auto sn = summarize_values(n, sample_values(tree_experiment(n, 500, 2020), n));
  const auto smn = summarize_values(m + n, sample_values(tree_experiment(m + n, 500, 3030), m + n));
  auto tree = make_dary_tree({2});
  const auto prof = transient_profile(*tree, tree_partition(tree), n);
  const double eps = EpsilonRule{}(n, delta);
  const double ps = psi(n, eps, prof.h[n], prof.reach2n_max[n]);
  const auto c = check_subadditivity(sm, sn, smn, tree_subadditivity_slack(n, ps, eps));
  report("subadditivity", c.holds,
         fmt("(m+n)E[V_20]=%.4f vs mE[V_m]+nE[V_n]=%.4f, rhs after slack %.4f, ", c.lhs, c.split,
             c.rhs) +
             "verdict " + to_string(c.verdict) + fmt(" (psi %.3g, eps %.3f)", ps, eps),
         t0);
}

void oscillation() {
  const auto t0 = Clock::now();
  ExperimentConfig c;
  c.graph = make_counterexample_tree({{{1, 13}}});
  c.distribution = PayoffDistribution::bernoulli(0.5);
  c.samples = 200;
  c.master_seed = 515151;
  c.threads = 1;
  const auto r = counterexample_oscillation(c, 12, 512, 0.02);
  // brute-force the branchy horizon on the first samples
  int oracle_bad = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    PayoffField f(derive_seed(c.master_seed, 12, i), c.distribution);
    oracle_bad += brute_force_value(*c.graph, f, VertexId{}, 12).value != r.branchy.values[i];
  }
  // pilot-calibrated expectations: 0.235 and 0.448
  const bool calibrated = std::abs(r.branchy.mean - 0.235) < 0.03 &&
                          std::abs(r.pathy.mean - 0.448) < 0.01;
  report("oscillation", r.oscillates && oracle_bad == 0,
         fmt("E[V_12]=%.4f +- %.4f, E[V_512]=%.4f +- %.4f", r.branchy.mean, r.half_width_branchy,
             r.pathy.mean, r.half_width_pathy) +
             ", margin 0.02, pilot match " + (calibrated ? "yes" : "no") +
             ", brute-force mismatches " + std::to_string(oracle_bad),
         t0);
}

void reproducibility() {
  const auto t0 = Clock::now();
  const nlohmann::json docs[] = {
      {{"graph", {{"family", "dary"}, {"d", 2}}},
       {"run", {{"n", {8, 12, 16}}, {"samples", 150}, {"seed", 99}}},
       {"bounds", {{"subadditivity", {{"m", 8}, {"n", 8}}}}}},
      {{"graph", {{"family", "grid"}}},
       {"payoffs", {{"distribution", "uniform"}}},
       {"run", {{"n", {6, 10}}, {"samples", 100}, {"seed", 5}}}},
      {{"graph", {{"family", "counterexample"}, {"intervals", {{1, 13}}}}},
       {"run", {{"n", {12, 40}}, {"samples", 60}, {"seed", 8}}},
       {"bounds", {{"oscillation", {{"n_branchy", 12}, {"n_pathy", 40}}}}}},
  };
  int diffs = 0, runs = 0;
  for (const auto& base : docs) {
    std::string ref_samples, ref_summary, ref_report;
    for (int threads : {1, 8, 1, 8}) {
      nlohmann::json doc = base;
      doc["run"]["threads"] = threads;
      const auto out = run_experiment_pipeline(parse_config(doc));
      ++runs;
      const std::string rep = out.report.dump(2);
      if (ref_samples.empty()) {
        ref_samples = out.samples_csv;
        ref_summary = out.summary_csv;
        ref_report = rep;
        continue;
      }
      diffs += out.samples_csv != ref_samples;
      diffs += out.summary_csv != ref_summary;
      diffs += rep != ref_report;
    }
  }
  report("reproducibility", diffs == 0,
         std::to_string(runs) + " pipeline runs over 3 configs with 1 and 8 threads, differing outputs " +
             std::to_string(diffs),
         t0);
}

const char* g_only = nullptr;
bool g_matched = false;

template <class F>
void guarded(const char* name, F&& f) {
  if (g_only && std::string(g_only) != name) return;
  g_matched = true;
  const auto t0 = Clock::now();
  try {
    f();
  } catch (const std::exception& e) {
    report(name, false, std::string("threw: ") + e.what(), t0);
  }
}

}  // namespace

// With an argument, runs only the named criterion.
int main(int argc, char** argv) {
  if (argc > 1) g_only = argv[1];
  const auto insts = oracle_instances(500);
  guarded("oracle-equivalence", [&] { oracle_equivalence(insts); });
  guarded("value-difference", [&] { value_differences(insts); });
  guarded("security-levels", [&] { security_levels(insts); });
  guarded("avoidance", avoidance);
  guarded("transient-speeds", transient_speeds);
  guarded("transience-verdicts", transience_verdicts);
  guarded("transient-tail", transient_tail);
  guarded("bootstrap", bootstrap);
  guarded("subadditivity", subadditivity);
  guarded("oscillation", oscillation);
  guarded("reproducibility", reproducibility);
  if (g_only && !g_matched) {
    std::printf("unknown criterion '%s'\n", g_only);
    return 2;
  }
  if (!g_only) std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
