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

#ifndef DIRGAME_GENERATORS_HPP_
#define DIRGAME_GENERATORS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirgame/graph.hpp"

namespace dirgame {

using GraphPtr = std::shared_ptr<const GameGraph>;
using IntVec = std::vector<std::int64_t>;

struct DaryTreeSpec {
  int d = 2;
};

/// Odd heights branch in two at height 1 and inside any [a, b) interval;
/// every other node has one child.
struct CounterexampleSpec {
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;

  /// [2^(2^(2m)), 2^(2^(2m+1))) for every m whose bounds fit in int64.
  static CounterexampleSpec default_schedule();
};

/// Branching level set of a controlled-expansion tree.
struct LevelSet {
  enum class Rule { kList, kAll, kEvery, kSquares };
  Rule rule = Rule::kList;
  std::vector<std::int64_t> levels;  // kList only, strictly increasing
  std::int64_t step = 1;             // kEvery only

  bool contains(std::int64_t level) const;
  /// Number of members in [0, level].
  std::int64_t count_through(std::int64_t level) const;
};

struct ControlledTreeSpec {
  LevelSet levels;
  bool path_mode = true;
};

struct OrientedLatticeSpec {
  std::vector<IntVec> offsets;
  IntVec direction;
  IntVec periods;  // empty means all ones
  /// Residues (mod periods) of the included vertices; empty means all of Z^d.
  std::vector<IntVec> mask;
  std::optional<int> transitivity_radius;
  std::string family = "lattice";
};

struct TilingEdge {
  int from = 0;
  std::int64_t dx = 0;
  std::int64_t dy = 0;
};

struct TilingSpec {
  IntVec period1;
  IntVec period2;
  std::vector<IntVec> vertices;  // corner classes inside the domain
  std::vector<TilingEdge> edges;
  IntVec direction;  // empty: search for one
  std::optional<int> transitivity_radius;
};

struct HChainSpec {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

/// Finite graph given node by node. Used for hand-built fixtures; sinks and
/// cycles are allowed so that the validator has something to find.
struct ExplicitGraphSpec {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::vector<std::string>>> edges;
  std::string initial;
  std::optional<int> max_out_degree;
};

GraphPtr make_dary_tree(const DaryTreeSpec& spec);
GraphPtr make_counterexample_tree(const CounterexampleSpec& spec);
GraphPtr make_controlled_tree(const ControlledTreeSpec& spec);
GraphPtr make_oriented_lattice(const OrientedLatticeSpec& spec);
GraphPtr make_line();
GraphPtr make_grid();
GraphPtr make_tiling(const TilingSpec& spec);
GraphPtr make_h_chain(const HChainSpec& spec);
GraphPtr make_explicit_graph(const ExplicitGraphSpec& spec);

std::int64_t dot(const IntVec& a, const IntVec& b);

}  // namespace dirgame

#endif  // DIRGAME_GENERATORS_HPP_
