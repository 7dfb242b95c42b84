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

#ifndef DIRGAME_GRAPH_HPP_
#define DIRGAME_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirgame/vertex.hpp"

namespace dirgame {

class TreeGraph;

enum class GraphKind { kTree, kLattice, kExplicit };

/// Lazily explored directed game graph.
///
/// Implementations are immutable after construction, so every method may be
/// called concurrently. Vertices exist only as canonical keys; nothing beyond
/// the queried region is materialized.
class GameGraph {
 public:
  virtual ~GameGraph() = default;

  virtual std::string family() const = 0;
  virtual GraphKind kind() const = 0;
  virtual VertexId initial() const = 0;
  virtual int max_out_degree() const = 0;
  /// Weak-transitivity radius M when the generator certifies one.
  virtual std::optional<int> transitivity_radius() const = 0;

  /// Ordered out-neighbours. The order defines move indices for strategies.
  /// Throws StructuralError for keys that are not vertices of the graph.
  virtual std::vector<VertexId> out_neighbors(const VertexId& v) const = 0;

  /// Equal labels certify isomorphic descendant subgraphs.
  virtual std::string equivalence_label(const VertexId& v) const = 0;

  /// One vertex per equivalence class (or, for families with infinitely many
  /// classes, the vertices that attain the reach-set maximum).
  virtual std::vector<VertexId> class_representatives() const = 0;

  virtual std::string format_vertex(const VertexId& v) const;
  virtual VertexId parse_vertex(std::string_view text) const;

  /// Dimension of the integer embedding used by oriented partitions; 0 when
  /// the family has none.
  virtual int embedding_dim() const { return 0; }
  virtual std::vector<std::int64_t> embed(const VertexId& v) const;
  /// Direction u with (w - z) . u > 0 along every edge, empty if none.
  virtual std::vector<std::int64_t> orientation() const { return {}; }
  /// Longest edge in the embedding (r), 0 when there is no embedding.
  virtual double max_edge_length() const { return 0.0; }

  /// Per-level sizes of the BFS reach set of depth n from z, when the
  /// generator knows them in closed form. Entries may exceed 2^64.
  virtual std::optional<std::vector<long double>> level_counts(
      const VertexId& z, int n) const;

  virtual const TreeGraph* as_tree() const { return nullptr; }
};

/// State carried down a tree exploration. For every tree family the child
/// count depends only on (depth, mode).
struct TreeCursor {
  std::int64_t depth = 0;
  std::int32_t mode = 0;
  std::uint64_t digest = kEmptyKeyDigest;
};

/// Rooted out-tree whose vertex keys are words of child indices.
class TreeGraph : public GameGraph {
 public:
  GraphKind kind() const final { return GraphKind::kTree; }
  VertexId initial() const override { return VertexId{}; }
  std::vector<VertexId> out_neighbors(const VertexId& v) const override;
  std::string format_vertex(const VertexId& v) const override;
  VertexId parse_vertex(std::string_view text) const override;
  std::optional<std::vector<long double>> level_counts(
      const VertexId& z, int n) const override;
  const TreeGraph* as_tree() const override { return this; }

  /// Walks the key from the root. Throws StructuralError for invalid words.
  TreeCursor cursor(const VertexId& v) const;
  TreeCursor child(const TreeCursor& c, int index) const {
    return TreeCursor{c.depth + 1, child_mode(c, index),
                      digest_step(c.digest, index)};
  }
  virtual int child_count(const TreeCursor& c) const = 0;

  /// Height parity predicates (Z_even / Z_odd of the d-ary tree game).
  static bool is_even_height(const VertexId& v) { return v.size() % 2 == 0; }
  static bool is_odd_height(const VertexId& v) { return v.size() % 2 == 1; }

 protected:
  virtual std::int32_t child_mode(const TreeCursor& c, int index) const {
    (void)index;
    return c.mode;
  }
};

struct ReachOptions {
  std::size_t max_vertices = 100'000'000;
};

/// Breadth-first reach set Z^(n)(start): level i holds the vertices first
/// reached after exactly i moves.
struct ReachSet {
  VertexId start;
  int depth = 0;
  std::vector<std::vector<VertexId>> levels;

  std::vector<std::size_t> counts() const;
  std::size_t total() const;
};

ReachSet reach_set(const GameGraph& g, const VertexId& z, int n,
                   const ReachOptions& options = {});

/// Level sizes of Z^(n)(z): closed form when the family provides it,
/// enumeration otherwise.
std::vector<long double> reach_level_counts(const GameGraph& g,
                                            const VertexId& z, int n,
                                            const ReachOptions& options = {});

enum class ViolationKind { kSink, kDegree, kCycle, kInvalidVertex };

struct Violation {
  ViolationKind kind;
  std::string vertex;
  std::vector<std::string> witness;  // path from the start, or the cycle
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::size_t vertices_explored = 0;
  std::vector<Violation> violations;
};

std::string_view to_string(ViolationKind kind);

/// Checks the structural assumptions inside the depth-n region around z:
/// every vertex that must move within n stages has out-degree in [1, max],
/// and the explored subgraph is acyclic. Never throws for violations.
ValidationReport validate_region(const GameGraph& g, const VertexId& z, int n,
                                 const ReachOptions& options = {});

}  // namespace dirgame

#endif  // DIRGAME_GRAPH_HPP_
