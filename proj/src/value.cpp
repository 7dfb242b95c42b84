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

#include "dirgame/value.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "dirgame/errors.hpp"

namespace dirgame {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Window widening for the search solver. Pruning decisions then never hinge
// on the last bits of a subtraction, so the surviving values are the same
// floating expressions the dp solver evaluates.
constexpr double kWindowSlack = 1e-9;

[[noreturn]] void throw_sink(const GameGraph& g, const VertexId& v, int stage) {
  throw StructuralError("vertex " + g.format_vertex(v) + " has no out-neighbours (stage " +
                        std::to_string(stage) + ")");
}

void check_degree(const GameGraph& g, const VertexId& v, std::size_t k, int stage) {
  if (k == 0) throw_sink(g, v, stage);
  if (k > static_cast<std::size_t>(g.max_out_degree())) {
    throw StructuralError("vertex " + g.format_vertex(v) + " has out-degree " +
                          std::to_string(k) + " above the declared maximum " +
                          std::to_string(g.max_out_degree()));
  }
}

}  // namespace

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kAuto: return "auto";
    case SolverKind::kDp: return "dp";
    case SolverKind::kSearch: return "search";
  }
  return "auto";
}

SolverKind parse_solver_kind(const std::string& text) {
  if (text == "auto") return SolverKind::kAuto;
  if (text == "dp") return SolverKind::kDp;
  if (text == "search") return SolverKind::kSearch;
  throw SpecError("unknown solver '" + text + "' (expected auto, dp or search)");
}

// ---------------------------------------------------------------------------
// Staged region

struct ValueSolver::Region {
  bool tree = false;
  std::vector<std::vector<std::uint64_t>> digest;       // per stage
  std::vector<std::vector<std::uint32_t>> child_begin;  // stages 0..n-1, size count+1
  std::vector<std::vector<std::uint32_t>> child;        // indices into stage j+1
  std::vector<std::vector<VertexId>> verts;             // generic graphs
  std::vector<std::vector<std::uint32_t>> parent;       // trees: parent index
  std::vector<std::vector<std::uint32_t>> move;         // trees: move from parent
  std::size_t states = 0;

  VertexId key(const VertexId& start, int stage, std::uint32_t s) const {
    if (!tree) return verts[stage][s];
    std::vector<std::int64_t> tail;
    for (int j = stage; j > 0; --j) {
      tail.push_back(move[j][s]);
      s = parent[j][s];
    }
    std::vector<std::int64_t> words(start.words().begin(), start.words().end());
    words.insert(words.end(), tail.rbegin(), tail.rend());
    return VertexId(std::move(words));
  }
};

namespace {

void charge(std::size_t& states, std::size_t add, std::size_t max_states, int stage) {
  states += add;
  if (states > max_states) {
    throw ResourceError("staged region exceeds the budget of " + std::to_string(max_states) +
                        " states at stage " + std::to_string(stage));
  }
}

}  // namespace

ValueSolver::ValueSolver(GraphPtr graph, VertexId start, int n, SolverKind kind,
                         std::size_t max_states)
    : graph_(std::move(graph)), start_(std::move(start)), n_(n), kind_(kind) {
  if (!graph_) throw SpecError("null graph");
  if (n_ < 1) throw DomainError("n must be >= 1");
  const TreeGraph* tree = graph_->as_tree();
  if (kind_ == SolverKind::kAuto) kind_ = tree ? SolverKind::kSearch : SolverKind::kDp;
  if (kind_ == SolverKind::kSearch) {
    if (!tree) throw SpecError("the search solver needs a tree family");
    tree->cursor(start_);  // validates the key
    return;
  }

  auto r = std::make_unique<Region>();
  r->tree = tree != nullptr;
  r->digest.resize(n_ + 1);
  r->child_begin.resize(n_);
  r->child.resize(n_);
  r->digest[0] = {start_.digest()};
  r->states = 1;
  if (tree) {
    r->parent.resize(n_ + 1);
    r->move.resize(n_ + 1);
    std::vector<TreeCursor> cur{tree->cursor(start_)}, next;
    for (int j = 0; j < n_; ++j) {
      next.clear();
      auto& begin = r->child_begin[j];
      begin.reserve(cur.size() + 1);
      begin.push_back(0);
      for (std::uint32_t s = 0; s < cur.size(); ++s) {
        const int k = tree->child_count(cur[s]);
        if (k < 1) throw_sink(*graph_, r->key(start_, j, s), j);
        charge(r->states, static_cast<std::size_t>(k), max_states, j + 1);
        for (int i = 0; i < k; ++i) {
          const TreeCursor c = tree->child(cur[s], i);
          r->child[j].push_back(static_cast<std::uint32_t>(next.size()));
          r->digest[j + 1].push_back(c.digest);
          r->parent[j + 1].push_back(s);
          r->move[j + 1].push_back(static_cast<std::uint32_t>(i));
          next.push_back(c);
        }
        begin.push_back(static_cast<std::uint32_t>(r->child[j].size()));
      }
      cur.swap(next);
    }
  } else {
    r->verts.resize(n_ + 1);
    r->verts[0] = {start_};
    for (int j = 0; j < n_; ++j) {
      std::unordered_map<VertexId, std::uint32_t, VertexIdHash> index;
      auto& begin = r->child_begin[j];
      begin.push_back(0);
      for (std::size_t s = 0; s < r->verts[j].size(); ++s) {
        std::vector<VertexId> nbrs = graph_->out_neighbors(r->verts[j][s]);
        check_degree(*graph_, r->verts[j][s], nbrs.size(), j);
        for (VertexId& w : nbrs) {
          auto [it, inserted] =
              index.try_emplace(w, static_cast<std::uint32_t>(r->verts[j + 1].size()));
          if (inserted) {
            charge(r->states, 1, max_states, j + 1);
            r->digest[j + 1].push_back(w.digest());
            r->verts[j + 1].push_back(std::move(w));
          }
          r->child[j].push_back(it->second);
        }
        begin.push_back(static_cast<std::uint32_t>(r->child[j].size()));
      }
    }
  }
  region_ = std::move(r);
}

ValueSolver::~ValueSolver() = default;
ValueSolver::ValueSolver(ValueSolver&&) noexcept = default;
ValueSolver& ValueSolver::operator=(ValueSolver&&) noexcept = default;

std::size_t ValueSolver::table_size() const { return region_ ? region_->states : 0; }

namespace {

class TreeSearch {
 public:
  TreeSearch(const TreeGraph& tree, const PayoffField& field, int n)
      : tree_(tree), field_(field), n_(n) {}

  double run(const TreeCursor& root) { return node(root, 0, -kInf, kInf); }
  std::size_t nodes() const { return nodes_; }

 private:
  static constexpr int kInline = 8;

  double node(const TreeCursor& c, int stage, double alpha, double beta) {
    ++nodes_;
    const int k = tree_.child_count(c);
    if (k < 1) throw StructuralError("tree vertex at depth " + std::to_string(c.depth) +
                                     " has no children");
    std::array<TreeCursor, kInline> inline_kids;
    std::array<double, kInline> inline_pay;
    std::array<int, kInline> inline_order;
    std::vector<TreeCursor> heap_kids;
    std::vector<double> heap_pay;
    std::vector<int> heap_order;
    TreeCursor* kids = inline_kids.data();
    double* pay = inline_pay.data();
    int* order = inline_order.data();
    if (k > kInline) {
      heap_kids.resize(k);
      heap_pay.resize(k);
      heap_order.resize(k);
      kids = heap_kids.data();
      pay = heap_pay.data();
      order = heap_order.data();
    }
    for (int i = 0; i < k; ++i) {
      kids[i] = tree_.child(c, i);
      pay[i] = field_.at_digest(kids[i].digest);
      order[i] = i;
    }
    const bool maximize = stage % 2 == 0;
    const bool last = stage + 1 == n_;
    if (last) {
      double best = pay[0];
      for (int i = 1; i < k; ++i) best = maximize ? std::max(best, pay[i]) : std::min(best, pay[i]);
      return best;
    }
    if (maximize) {
      std::stable_sort(order, order + k, [&](int a, int b) { return pay[a] > pay[b]; });
    } else {
      std::stable_sort(order, order + k, [&](int a, int b) { return pay[a] < pay[b]; });
    }
    const double rem = static_cast<double>(n_ - stage - 1);
    if (maximize) {
      double best = -kInf;
      for (int o = 0; o < k; ++o) {
        const int i = order[o];
        const double ub = pay[i] + rem;
        if (ub <= best) break;
        if (ub <= alpha) {
          best = std::max(best, ub);
          break;
        }
        const double v =
            pay[i] + node(kids[i], stage + 1, alpha - pay[i] - kWindowSlack,
                          beta - pay[i] + kWindowSlack);
        if (v > best) best = v;
        if (best > alpha) alpha = best;
        if (best >= beta) break;
      }
      return best;
    }
    double best = kInf;
    for (int o = 0; o < k; ++o) {
      const int i = order[o];
      const double lb = pay[i];
      if (lb >= best) break;
      if (lb >= beta) {
        best = std::min(best, lb);
        break;
      }
      const double v = pay[i] + node(kids[i], stage + 1, alpha - pay[i] - kWindowSlack,
                                     beta - pay[i] + kWindowSlack);
      if (v < best) best = v;
      if (best < beta) beta = best;
      if (best <= alpha) break;
    }
    return best;
  }

  const TreeGraph& tree_;
  const PayoffField& field_;
  int n_;
  std::size_t nodes_ = 0;
};

// Payoffs that are all 0 or 1 make U an integer, so the value can be found
// by bisection over threshold tests "U >= x". Each test only needs one
// winning child at Player 1 nodes and one refuting child at Player 2 nodes,
// which prunes far more than a real-valued window.
class BinaryThresholdSearch {
 public:
  BinaryThresholdSearch(const TreeGraph& tree, const PayoffField& field, int n)
      : tree_(tree), field_(field), n_(n) {}

  double run(const TreeCursor& root) {
    int lo = 0, hi = n_;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      if (test(root, 0, mid)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    return static_cast<double>(lo);
  }
  std::size_t nodes() const { return nodes_; }

 private:
  static constexpr int kInline = 8;

  bool test(const TreeCursor& c, int stage, int x) {
    if (x <= 0) return true;
    if (x > n_ - stage) return false;
    ++nodes_;
    const int k = tree_.child_count(c);
    if (k < 1) throw StructuralError("tree vertex at depth " + std::to_string(c.depth) +
                                     " has no children");
    std::array<TreeCursor, kInline> inline_kids;
    std::array<int, kInline> inline_pay;
    std::vector<TreeCursor> heap_kids;
    std::vector<int> heap_pay;
    TreeCursor* kids = inline_kids.data();
    int* pay = inline_pay.data();
    if (k > kInline) {
      heap_kids.resize(k);
      heap_pay.resize(k);
      kids = heap_kids.data();
      pay = heap_pay.data();
    }
    for (int i = 0; i < k; ++i) {
      kids[i] = tree_.child(c, i);
      pay[i] = field_.at_digest(kids[i].digest) > 0.5 ? 1 : 0;
    }
    if (stage % 2 == 0) {
      for (int want : {1, 0})
        for (int i = 0; i < k; ++i)
          if (pay[i] == want && test(kids[i], stage + 1, x - pay[i])) return true;
      return false;
    }
    for (int want : {0, 1})
      for (int i = 0; i < k; ++i)
        if (pay[i] == want && !test(kids[i], stage + 1, x - pay[i])) return false;
    return true;
  }

  const TreeGraph& tree_;
  const PayoffField& field_;
  int n_;
  std::size_t nodes_ = 0;
};

bool binary_payoffs(const PayoffField& field) {
  if (field.has_overrides() || !field.distribution().atomic()) return false;
  for (double v : field.distribution().values()) {
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

}  // namespace

double ValueSolver::total(const PayoffField& field) const {
  if (kind_ == SolverKind::kSearch) {
    const TreeGraph& tree = *graph_->as_tree();
    if (binary_payoffs(field)) return BinaryThresholdSearch(tree, field, n_).run(tree.cursor(start_));
    TreeSearch search(tree, field, n_);
    return search.run(tree.cursor(start_));
  }
  const Region& r = *region_;
  std::vector<double> next(r.digest[n_].size(), 0.0), cur, pay;
  for (int j = n_ - 1; j >= 0; --j) {
    const auto& dig = r.digest[j + 1];
    pay.resize(dig.size());
    for (std::size_t c = 0; c < dig.size(); ++c) pay[c] = field.at_digest(dig[c]);
    const auto& begin = r.child_begin[j];
    const auto& child = r.child[j];
    cur.resize(begin.size() - 1);
    const bool maximize = j % 2 == 0;
    for (std::size_t s = 0; s + 1 < begin.size(); ++s) {
      double best = maximize ? -kInf : kInf;
      for (std::uint32_t e = begin[s]; e < begin[s + 1]; ++e) {
        const std::uint32_t c = child[e];
        const double v = pay[c] + next[c];
        if (maximize ? v > best : v < best) best = v;
      }
      cur[s] = best;
    }
    next.swap(cur);
  }
  return next[0];
}

ValueSolution ValueSolver::solve(const PayoffField& field) const {
  ValueSolution sol;
  sol.start = start_;
  sol.n = n_;
  if (kind_ == SolverKind::kSearch) {
    const TreeGraph& tree = *graph_->as_tree();
    if (binary_payoffs(field)) {
      BinaryThresholdSearch search(tree, field, n_);
      sol.total = search.run(tree.cursor(start_));
      sol.table_size = search.nodes();
    } else {
      TreeSearch search(tree, field, n_);
      sol.total = search.run(tree.cursor(start_));
      sol.table_size = search.nodes();
    }
    sol.value = sol.total / n_;
    return sol;
  }
  const Region& r = *region_;
  std::vector<double> next(r.digest[n_].size(), 0.0), cur, pay;
  std::vector<std::vector<int>> choice(n_);
  for (int j = n_ - 1; j >= 0; --j) {
    const auto& dig = r.digest[j + 1];
    pay.resize(dig.size());
    for (std::size_t c = 0; c < dig.size(); ++c) pay[c] = field.at_digest(dig[c]);
    const auto& begin = r.child_begin[j];
    const auto& child = r.child[j];
    cur.resize(begin.size() - 1);
    choice[j].resize(begin.size() - 1);
    const bool maximize = j % 2 == 0;
    for (std::size_t s = 0; s + 1 < begin.size(); ++s) {
      double best = maximize ? -kInf : kInf;
      int arg = 0;
      for (std::uint32_t e = begin[s]; e < begin[s + 1]; ++e) {
        const std::uint32_t c = child[e];
        const double v = pay[c] + next[c];
        if (maximize ? v > best : v < best) {
          best = v;
          arg = static_cast<int>(e - begin[s]);
        }
      }
      cur[s] = best;
      choice[j][s] = arg;
    }
    next.swap(cur);
  }
  sol.total = next[0];
  sol.value = sol.total / n_;
  sol.table_size = r.states;
  for (int j = 0; j < n_; ++j) {
    auto& strategy = j % 2 == 0 ? sol.strategy1 : sol.strategy2;
    for (std::size_t s = 0; s < choice[j].size(); ++s) {
      strategy.emplace(StateKey{r.key(start_, j, static_cast<std::uint32_t>(s)), j},
                       choice[j][s]);
    }
  }
  return sol;
}

ValueSolution solve_value(const GraphPtr& graph, const PayoffField& field, const VertexId& z0,
                          int n, std::size_t max_states) {
  return ValueSolver(graph, z0, n, SolverKind::kDp, max_states).solve(field);
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

using Rational = boost::multiprecision::cpp_rational;

template <class Num>
class BruteForce {
 public:
  BruteForce(const GameGraph& g, const PayoffField& f, int n) : g_(g), f_(f), n_(n) {}

  Num run(const VertexId& v, int stage) {
    if (stage == n_) return Num(0);
    const std::vector<VertexId> nbrs = g_.out_neighbors(v);
    check_degree(g_, v, nbrs.size(), stage);
    const bool maximize = stage % 2 == 0;
    Num best(0);
    bool first = true;
    for (const VertexId& w : nbrs) {
      Num val = Num(f_(w)) + run(w, stage + 1);
      if (first || (maximize ? val > best : val < best)) {
        best = val;
        first = false;
      }
    }
    return best;
  }

 private:
  const GameGraph& g_;
  const PayoffField& f_;
  int n_;
};

}  // namespace

BruteForceResult brute_force_value(const GameGraph& graph, const PayoffField& field,
                                   const VertexId& z0, int n, double max_histories) {
  if (n < 1) throw DomainError("n must be >= 1");
  const double histories = std::pow(static_cast<double>(graph.max_out_degree()), n);
  if (histories > max_histories) {
    throw ResourceError("brute force needs up to " + std::to_string(histories) +
                        " histories, above the limit of " + std::to_string(max_histories));
  }
  BruteForceResult out;
  if (field.distribution().atomic()) {
    const Rational total = BruteForce<Rational>(graph, field, n).run(z0, 0);
    out.total = static_cast<double>(total);
    out.exact = Rational(out.total) == total;
    out.total_rational = total.str();
  } else {
    out.total = BruteForce<double>(graph, field, n).run(z0, 0);
    out.total_rational = "";
  }
  out.value = out.total / n;
  return out;
}

// ---------------------------------------------------------------------------
// Play

Trajectory play(const GameGraph& graph, const PayoffField& field, const Strategy& s1,
                const Strategy& s2, const VertexId& z0, int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  Trajectory t;
  t.states.push_back(z0);
  for (int i = 0; i < n; ++i) {
    const VertexId v = t.states.back();
    std::vector<VertexId> nbrs = graph.out_neighbors(v);
    check_degree(graph, v, nbrs.size(), i);
    const int choice = (i % 2 == 0 ? s1 : s2)(v, i, t.states);
    if (choice < 0 || choice >= static_cast<int>(nbrs.size())) {
      throw StructuralError("player " + std::to_string(i % 2 + 1) + " chose move " +
                            std::to_string(choice) + " at vertex " + graph.format_vertex(v) +
                            ", stage " + std::to_string(i) + " (out-degree " +
                            std::to_string(nbrs.size()) + ")");
    }
    t.payoffs.push_back(field(nbrs[choice]));
    t.states.push_back(std::move(nbrs[choice]));
  }
  double total = 0.0;
  for (auto it = t.payoffs.rbegin(); it != t.payoffs.rend(); ++it) total = *it + total;
  t.total = total;
  t.mean_payoff = total / n;
  return t;
}

Strategy solution_strategy(const ValueSolution& solution, int player) {
  if (player != 1 && player != 2) throw DomainError("player must be 1 or 2");
  const auto* table = player == 1 ? &solution.strategy1 : &solution.strategy2;
  return [table, player](const VertexId& v, int stage, const std::vector<VertexId>&) {
    auto it = table->find(StateKey{v, stage});
    if (it == table->end()) {
      throw StructuralError("player " + std::to_string(player) +
                            " strategy is undefined at stage " + std::to_string(stage));
    }
    return it->second;
  };
}

ValueDifferenceReport value_difference_check(const GraphPtr& graph, const PayoffField& field,
                                             const VertexId& z0, int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("need 1 <= k <= n");
  ValueDifferenceReport r;
  r.n = n;
  r.k = k;
  r.v_n = ValueSolver(graph, z0, n).value(field);
  r.v_n_minus_k = n == k ? 0.0 : ValueSolver(graph, z0, n - k).value(field);
  r.difference = std::abs(r.v_n - r.v_n_minus_k);
  r.bound = static_cast<double>(k) / n;
  r.ok = r.difference <= r.bound + 1e-12;
  return r;
}

Strategy avoidance_strategy(const GameGraph& tree, const VertexId& z0, int k,
                            std::vector<VertexId> targets) {
  if (tree.family() != "dary") throw SpecError("the avoidance strategy needs a d-ary tree");
  if (k < 0 || k % 2 != 0) throw DomainError("avoidance horizon k must be even and >= 0");
  const int d = tree.max_out_degree();
  const long double capacity = std::pow(static_cast<long double>(d), k / 2);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (static_cast<long double>(targets.size()) >= capacity) {
    throw DomainError("avoidance needs |S| < d^(k/2) = " +
                      std::to_string(static_cast<double>(capacity)) + ", got " +
                      std::to_string(targets.size()));
  }
  for (const VertexId& s : targets) {
    if (s.size() != z0.size() + static_cast<std::size_t>(k) || !s.has_prefix(z0)) {
      throw DomainError("target " + tree.format_vertex(s) + " is not " + std::to_string(k) +
                        " levels below the start");
    }
    tree.out_neighbors(s);  // validates the key
  }
  const std::size_t base = z0.size();
  return [targets = std::move(targets), d, k, base](const VertexId& v, int stage,
                                                     const std::vector<VertexId>&) {
    if (stage % 2 == 0 || stage >= k || v.size() != base + static_cast<std::size_t>(stage)) {
      return 0;
    }
    int best = 0;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (int i = 0; i < d; ++i) {
      const VertexId child = v.extended(i);
      const auto count = static_cast<std::size_t>(std::count_if(
          targets.begin(), targets.end(), [&](const VertexId& s) { return s.has_prefix(child); }));
      if (count < best_count) {
        best_count = count;
        best = i;
      }
    }
    return best;
  };
}

}  // namespace dirgame
