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

#ifndef DIRGAME_VALUE_HPP_
#define DIRGAME_VALUE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dirgame/generators.hpp"
#include "dirgame/graph.hpp"
#include "dirgame/payoff.hpp"

namespace dirgame {

/// kDp: backward induction over the staged region Z^(n)(z0), memoized by
/// (vertex, stage). kSearch: depth-first alpha-beta, trees only, constant
/// memory. kAuto picks search for trees and dp otherwise.
enum class SolverKind { kAuto, kDp, kSearch };

std::string to_string(SolverKind kind);
SolverKind parse_solver_kind(const std::string& text);

struct StateKey {
  VertexId vertex;
  int stage = 0;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

/// Player 1 moves at even stages and Player 2 at odd stages, so one map per
/// player keyed by (vertex, stage) stores the chosen neighbour index.
struct ValueSolution {
  VertexId start;
  int n = 0;
  double value = 0.0;
  /// U(z0, 0): the right-folded optimal payoff sum, equal to n * value up to
  /// one rounding.
  double total = 0.0;
  std::size_t table_size = 0;
  std::map<StateKey, int> strategy1;
  std::map<StateKey, int> strategy2;
};

/// Solver bound to one (graph, start, horizon). The staged region is built
/// once in the constructor; value() may then be called concurrently with
/// different payoff fields.
class ValueSolver {
 public:
  ValueSolver(GraphPtr graph, VertexId start, int n, SolverKind kind = SolverKind::kAuto,
              std::size_t max_states = 100'000'000);
  ~ValueSolver();
  ValueSolver(ValueSolver&&) noexcept;
  ValueSolver& operator=(ValueSolver&&) noexcept;

  SolverKind kind() const { return kind_; }
  int n() const { return n_; }
  const VertexId& start() const { return start_; }
  /// Memoized (vertex, stage) states; 0 for the search solver.
  std::size_t table_size() const;

  double total(const PayoffField& field) const;
  double value(const PayoffField& field) const { return total(field) / n_; }
  /// Value plus optimal strategies (dp solver only).
  ValueSolution solve(const PayoffField& field) const;

 private:
  struct Region;
  GraphPtr graph_;
  VertexId start_;
  int n_;
  SolverKind kind_;
  std::unique_ptr<Region> region_;
};

/// One-shot exact solve with strategies (forces the dp solver).
ValueSolution solve_value(const GraphPtr& graph, const PayoffField& field, const VertexId& z0,
                          int n, std::size_t max_states = 100'000'000);

struct BruteForceResult {
  double value = 0.0;
  double total = 0.0;
  /// True when every payoff was an atom and the rational total is exactly
  /// representable, so `total` carries no rounding.
  bool exact = false;
  std::string total_rational;
};

/// History-tree minimax with no memoization. Payoff sums are accumulated in
/// exact rationals when the distribution is atomic.
BruteForceResult brute_force_value(const GameGraph& graph, const PayoffField& field,
                                   const VertexId& z0, int n, double max_histories = 1e6);

using Strategy =
    std::function<int(const VertexId& vertex, int stage, const std::vector<VertexId>& history)>;

struct Trajectory {
  std::vector<VertexId> states;  // z_0 .. z_n
  std::vector<double> payoffs;   // G_{z_1} .. G_{z_n}
  double total = 0.0;            // right fold, matches the solver's U(z0,0)
  double mean_payoff = 0.0;
};

Trajectory play(const GameGraph& graph, const PayoffField& field, const Strategy& s1,
                const Strategy& s2, const VertexId& z0, int n);

/// Replays the recorded choice of `player` (1 or 2) from a solution.
Strategy solution_strategy(const ValueSolution& solution, int player);

struct ValueDifferenceReport {
  int n = 0;
  int k = 0;
  double v_n = 0.0;
  double v_n_minus_k = 0.0;
  double difference = 0.0;
  double bound = 0.0;
  bool ok = true;
};

/// |V_n - V_{n-k}| <= k/n with V_0 = 0.
ValueDifferenceReport value_difference_check(const GraphPtr& graph, const PayoffField& field,
                                             const VertexId& z0, int n, int k);

/// Player 2 policy for stages 1..k on a d-ary tree that keeps the token out
/// of `targets` (vertices k levels below z0) whenever |targets| < d^(k/2):
/// at each turn it moves to the child with the fewest surviving targets.
Strategy avoidance_strategy(const GameGraph& tree, const VertexId& z0, int k,
                            std::vector<VertexId> targets);

}  // namespace dirgame

#endif  // DIRGAME_VALUE_HPP_
