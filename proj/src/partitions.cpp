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

#include "dirgame/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "dirgame/errors.hpp"

namespace dirgame {

std::string to_string(PartitionKind kind) {
  switch (kind) {
    case PartitionKind::kOriented: return "oriented";
    case PartitionKind::kTree: return "tree";
    case PartitionKind::kTrivial: return "trivial";
    case PartitionKind::kCustom: return "custom";
  }
  return "custom";
}

std::string to_string(TransienceVerdict verdict) {
  switch (verdict) {
    case TransienceVerdict::kAccepted: return "accepted";
    case TransienceVerdict::kRejected: return "rejected";
    case TransienceVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

AdaptedFamily oriented_partition(GraphPtr graph, IntVec u) {
  if (!graph) throw SpecError("null graph");
  if (u.empty()) u = graph->orientation();
  if (graph->embedding_dim() == 0) {
    throw SpecError("oriented partition needs a graph with a lattice embedding (family '" +
                    graph->family() + "')");
  }
  if (static_cast<int>(u.size()) != graph->embedding_dim()) {
    throw SpecError("direction dimension does not match the embedding");
  }
  std::int64_t g = 0;
  for (std::int64_t x : u) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) throw SpecError("oriented partition direction must be non-zero");
  if (g != 1) throw SpecError("oriented partition direction must have coordinate gcd 1");
  AdaptedFamily fam;
  fam.kind = PartitionKind::kOriented;
  fam.direction = u;
  fam.index = [graph = std::move(graph), u](const VertexId& z, const VertexId& w) -> std::int64_t {
    if (w == z) return 0;
    const std::int64_t i = dot(graph->embed(w), u) - dot(graph->embed(z), u);
    if (i == 0) return 1;
    return i > 0 ? 2 * i : 2 * (-i) + 1;
  };
  return fam;
}

AdaptedFamily tree_partition(const GraphPtr& graph) {
  if (!graph || !graph->as_tree()) {
    throw SpecError("tree partition applies to tree families only");
  }
  AdaptedFamily fam;
  fam.kind = PartitionKind::kTree;
  fam.index = [](const VertexId& z, const VertexId& w) -> std::int64_t {
    if (w == z) return 0;
    if (!w.has_prefix(z)) return 1;
    const auto dist = static_cast<std::int64_t>(w.size() - z.size());
    return dist >= 2 ? dist : 1;
  };
  return fam;
}

AdaptedFamily trivial_partition(GraphPtr graph, std::size_t search_budget) {
  if (!graph) throw SpecError("null graph");
  AdaptedFamily fam;
  fam.kind = PartitionKind::kTrivial;
  fam.index = [graph = std::move(graph), search_budget](const VertexId& z,
                                                        const VertexId& w) -> std::int64_t {
    std::unordered_set<VertexId, VertexIdHash> seen{z};
    std::vector<VertexId> level{z};
    std::int64_t rank = 0;
    while (!level.empty()) {
      std::vector<VertexId> next;
      for (const VertexId& v : level) {
        if (v == w) return rank;
        ++rank;
        for (VertexId& x : graph->out_neighbors(v)) {
          if (seen.insert(x).second) next.push_back(std::move(x));
        }
      }
      if (seen.size() > search_budget) break;
      level = std::move(next);
    }
    throw DomainError("vertex " + graph->format_vertex(w) + " is not a descendant of " +
                      graph->format_vertex(z) + " within the search budget");
  };
  return fam;
}

AdaptedFamily custom_partition(IndexFn index) {
  AdaptedFamily fam;
  fam.kind = PartitionKind::kCustom;
  fam.index = std::move(index);
  return fam;
}

AdaptedFamily default_partition(const GraphPtr& graph) {
  if (graph->as_tree()) return tree_partition(graph);
  if (graph->embedding_dim() > 0 && !graph->orientation().empty()) {
    return oriented_partition(graph);
  }
  return trivial_partition(graph);
}

// ---------------------------------------------------------------------------

namespace {

class AdaptedWalk {
 public:
  AdaptedWalk(const GameGraph& g, const AdaptedFamily& fam, const VertexId& z, int n)
      : g_(g), fam_(fam), z_(z), n_(n) {}

  AdaptednessReport run() {
    if (fam_.index(z_, z_) != 0) {
      report_.ok = false;
      report_.witness = {g_.format_vertex(z_)};
      report_.message = "start vertex is not in part 0";
      return report_;
    }
    path_.push_back(z_);
    walk(z_, 0);
    return report_;
  }

 private:
  bool walk(const VertexId& v, int depth) {
    ++report_.prefixes;
    if (depth == n_) return true;
    for (const VertexId& w : g_.out_neighbors(v)) {
      const std::int64_t idx = fam_.index(z_, w);
      path_.push_back(w);
      if (idx == 0 && w != z_) return fail(idx, "vertex other than the start maps to part 0");
      if (idx >= 1 && std::find(used_.begin(), used_.end(), idx) != used_.end()) {
        return fail(idx, "part " + std::to_string(idx) + " entered twice");
      }
      used_.push_back(idx);
      if (!walk(w, depth + 1)) return false;
      used_.pop_back();
      path_.pop_back();
    }
    return true;
  }

  bool fail(std::int64_t idx, std::string message) {
    report_.ok = false;
    report_.repeated_index = idx;
    report_.message = std::move(message);
    for (const VertexId& p : path_) report_.witness.push_back(g_.format_vertex(p));
    return false;
  }

  const GameGraph& g_;
  const AdaptedFamily& fam_;
  const VertexId& z_;
  int n_;
  std::vector<VertexId> path_;
  std::vector<std::int64_t> used_;
  AdaptednessReport report_;
};

}  // namespace

AdaptednessReport validate_adapted(const GameGraph& graph, const AdaptedFamily& family,
                                   const VertexId& z, int n, int budget) {
  if (n < 0) throw DomainError("prefix length must be >= 0");
  if (n > budget) {
    throw ResourceError("exhaustive adaptedness check limited to n <= " +
                        std::to_string(budget) + ", got " + std::to_string(n));
  }
  return AdaptedWalk(graph, family, z, n).run();
}

TransientProfile transient_profile(const GameGraph& graph, const AdaptedFamily& family,
                                   int n_max, const ReachOptions& options) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  TransientProfile out;
  out.n_max = n_max;
  out.h.assign(n_max + 1, 0);
  out.reach2n_max.assign(n_max + 1, 0.0L);
  const bool closed_tree = family.kind == PartitionKind::kTree && graph.as_tree();

  for (const VertexId& z : graph.class_representatives()) {
    std::vector<long double> counts;
    std::vector<std::int64_t> level_max(n_max + 1, 0);
    if (closed_tree || family.kind == PartitionKind::kTrivial) {
      counts = reach_level_counts(graph, z, 2 * n_max, options);
      long double cum = 0.0L;
      for (int i = 0; i <= n_max; ++i) {
        cum += counts[i];
        if (closed_tree) {
          level_max[i] = i;  // part i holds level i, children sit in part 1
        } else {
          level_max[i] = static_cast<std::int64_t>(cum) - 1;
        }
      }
    } else {
      const ReachSet rs = reach_set(graph, z, 2 * n_max, options);
      for (const auto& level : rs.levels) counts.push_back(static_cast<long double>(level.size()));
      for (int i = 0; i <= n_max; ++i) {
        for (const VertexId& v : rs.levels[i]) {
          level_max[i] = std::max(level_max[i], family.index(z, v));
        }
      }
    }
    std::int64_t h = 0;
    long double cum = 0.0L;
    std::vector<long double> prefix(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) prefix[i] = cum += counts[i];
    for (int n = 0; n <= n_max; ++n) {
      h = std::max(h, level_max[n]);
      out.h[n] = std::max(out.h[n], h);
      out.reach2n_max[n] = std::max(out.reach2n_max[n], prefix[2 * n]);
    }
  }
  return out;
}

std::int64_t transient_speed(const GameGraph& graph, const AdaptedFamily& family, int n,
                             const ReachOptions& options) {
  if (n < 1) throw DomainError("n must be >= 1");
  return transient_profile(graph, family, n, options).h[n];
}

long double log_psi(int n, double t, std::int64_t h_n, long double reach2n_max) {
  if (!(t > 0.0)) throw DomainError("psi needs t > 0");
  if (n < 1) throw DomainError("psi needs n >= 1");
  if (h_n < n) throw DomainError("psi needs h(n) >= n");
  if (!(reach2n_max >= 1.0L)) throw DomainError("psi needs |Z^(2n)| >= 1");
  const long double tn = static_cast<long double>(t) * n;
  return -tn * tn / (2.0L * h_n) + std::log(reach2n_max);
}

double psi(int n, double t, std::int64_t h_n, long double reach2n_max) {
  return static_cast<double>(std::exp(log_psi(n, t, h_n, reach2n_max)));
}

double EpsilonRule::operator()(int n, double delta) const {
  return scale * std::pow(static_cast<double>(n), -exponent.value_or(delta));
}

TransienceReport check_delta_transient(const GameGraph& graph, const AdaptedFamily& family,
                                       double delta, const std::vector<int>& n_range,
                                       const EpsilonRule& rule, const ReachOptions& options) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw DomainError("delta must lie in (0, 1/2), got " + std::to_string(delta));
  }
  if (n_range.empty()) throw DomainError("n_range is empty");
  if (!(rule.scale > 0.0)) throw DomainError("epsilon scale must be positive");
  for (int n : n_range) {
    if (n < 1) throw DomainError("n_range values must be >= 1");
  }
  std::vector<int> ns = n_range;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  const TransientProfile profile = transient_profile(graph, family, ns.back(), options);
  TransienceReport report;
  report.delta = delta;
  report.eps_scale = rule.scale;
  report.eps_exponent = rule.exponent.value_or(delta);
  for (int n : ns) {
    TransienceSample s;
    s.n = n;
    s.h = profile.h[n];
    s.reach2n = profile.reach2n_max[n];
    s.epsilon = rule(n, delta);
    s.psi = psi(n, s.epsilon, s.h, s.reach2n);
    s.sum = s.epsilon + s.psi;
    s.c_n = std::pow(static_cast<double>(n), delta) * s.sum;
    report.samples.push_back(s);
  }
  const double first = report.samples.front().c_n;
  const double last = report.samples.back().c_n;
  if (!(last <= 10.0 * first)) {
    report.verdict = TransienceVerdict::kRejected;
  } else {
    bool monotone = true;
    for (std::size_t i = report.samples.size() / 2; i + 1 < report.samples.size(); ++i) {
      const double a = report.samples[i].c_n;
      const double b = report.samples[i + 1].c_n;
      if (b > a * (1.0 + 1e-9)) monotone = false;
    }
    report.verdict = monotone ? TransienceVerdict::kAccepted : TransienceVerdict::kInconclusive;
  }
  report.note =
      "finite-range diagnostic: C_n = n^delta (eps_n + psi(n, eps_n)) over the sampled n; "
      "not a proof of the asymptotic bound";
  return report;
}

std::int64_t oriented_reach_bound(int n, double r, double u_norm) {
  if (n < 0) throw DomainError("n must be >= 0");
  if (!(r > 0.0) || !(u_norm > 0.0)) throw DomainError("r and |u| must be positive");
  const double x = static_cast<double>(n) * r * u_norm;
  return static_cast<std::int64_t>(std::ceil(x * (1.0 - 1e-12)));
}

}  // namespace dirgame
