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

#ifndef DIRGAME_PARTITIONS_HPP_
#define DIRGAME_PARTITIONS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dirgame/generators.hpp"
#include "dirgame/graph.hpp"

namespace dirgame {

enum class PartitionKind { kOriented, kTree, kTrivial, kCustom };

std::string to_string(PartitionKind kind);

/// index(start, v): the part of v in the partition attached to start.
using IndexFn = std::function<std::int64_t(const VertexId& start, const VertexId& v)>;

struct AdaptedFamily {
  PartitionKind kind = PartitionKind::kCustom;
  IndexFn index;
  IntVec direction;  // oriented only
};

/// Level sets of w.u around z.u: 0 for z, 1 for the rest of z's level,
/// 2i for i levels above and 2i+1 for i levels below. `u` defaults to the
/// graph's own orientation.
AdaptedFamily oriented_partition(GraphPtr graph, IntVec u = {});
/// Descendants at distance k >= 2 form part k; children and every
/// non-descendant share part 1.
AdaptedFamily tree_partition(const GraphPtr& graph);
/// Singletons numbered by breadth-first rank among the descendants of the
/// start. Non-descendants have no part and raise DomainError.
AdaptedFamily trivial_partition(GraphPtr graph, std::size_t search_budget = 1'000'000);
AdaptedFamily custom_partition(IndexFn index);
/// tree for tree families, oriented when the graph has an orientation,
/// trivial otherwise.
AdaptedFamily default_partition(const GraphPtr& graph);

struct AdaptednessReport {
  bool ok = true;
  std::size_t prefixes = 0;
  std::vector<std::string> witness;
  std::int64_t repeated_index = -1;
  std::string message;
};

/// Enumerates every play prefix of length <= n from z and checks that no
/// part index >= 1 is entered twice. Throws ResourceError when n exceeds
/// `budget`.
AdaptednessReport validate_adapted(const GameGraph& graph, const AdaptedFamily& family,
                                   const VertexId& z, int n, int budget = 10);

/// h(n) and max |Z^(2n)(z)| for n = 0..n_max, maximized over the class
/// representatives of the graph.
struct TransientProfile {
  int n_max = 0;
  std::vector<std::int64_t> h;
  std::vector<long double> reach2n_max;
};

TransientProfile transient_profile(const GameGraph& graph, const AdaptedFamily& family,
                                   int n_max, const ReachOptions& options = {});
std::int64_t transient_speed(const GameGraph& graph, const AdaptedFamily& family, int n,
                             const ReachOptions& options = {});

/// exp(-t^2 n^2 / (2 h_n)) * reach2n_max, evaluated in log space.
double psi(int n, double t, std::int64_t h_n, long double reach2n_max);
/// Natural log of psi; finite even when psi overflows a double.
long double log_psi(int n, double t, std::int64_t h_n, long double reach2n_max);

/// epsilon_n = scale * n^(-exponent); the exponent defaults to delta.
struct EpsilonRule {
  double scale = 2.0;
  std::optional<double> exponent;
  double operator()(int n, double delta) const;
};

struct TransienceSample {
  int n = 0;
  double epsilon = 0.0;
  double psi = 0.0;
  double sum = 0.0;  // epsilon + psi
  double c_n = 0.0;  // n^delta * sum
  std::int64_t h = 0;
  long double reach2n = 0.0L;
};

enum class TransienceVerdict { kAccepted, kRejected, kInconclusive };
std::string to_string(TransienceVerdict verdict);

struct TransienceReport {
  double delta = 0.25;
  double eps_scale = 2.0;
  double eps_exponent = 0.25;
  std::vector<TransienceSample> samples;
  TransienceVerdict verdict = TransienceVerdict::kInconclusive;
  std::string note;
};

/// Finite-range trend diagnostic for C_n = n^delta (eps_n + psi(n, eps_n)):
/// rejected when C grows more than 10x across the range, accepted when it is
/// non-increasing over the upper half, inconclusive otherwise.
TransienceReport check_delta_transient(const GameGraph& graph, const AdaptedFamily& family,
                                       double delta, const std::vector<int>& n_range,
                                       const EpsilonRule& rule = {},
                                       const ReachOptions& options = {});

/// ceil(n r |u|): the radius of the ball that contains every n-step walk.
std::int64_t oriented_reach_bound(int n, double r, double u_norm);

}  // namespace dirgame

#endif  // DIRGAME_PARTITIONS_HPP_
