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

#include "dirgame/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "dirgame/errors.hpp"

namespace dirgame {
namespace {

std::string format_vec(const IntVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + ")";
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t vec_gcd(const IntVec& v) {
  std::int64_t g = 0;
  for (std::int64_t x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

double norm2(const IntVec& v) {
  double s = 0;
  for (std::int64_t x : v) s += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------

class DaryTree final : public TreeGraph {
 public:
  explicit DaryTree(int d) : d_(d) {}
  std::string family() const override { return "dary"; }
  int max_out_degree() const override { return d_; }
  std::optional<int> transitivity_radius() const override { return 0; }
  std::string equivalence_label(const VertexId& v) const override {
    cursor(v);
    return "T";
  }
  std::vector<VertexId> class_representatives() const override { return {VertexId{}}; }
  int child_count(const TreeCursor&) const override { return d_; }

 private:
  int d_;
};

class CounterexampleTree final : public TreeGraph {
 public:
  explicit CounterexampleTree(CounterexampleSpec spec) : spec_(std::move(spec)) {}
  std::string family() const override { return "counterexample"; }
  int max_out_degree() const override { return 2; }
  std::optional<int> transitivity_radius() const override { return std::nullopt; }
  std::string equivalence_label(const VertexId& v) const override {
    return "h" + std::to_string(cursor(v).depth);
  }
  std::vector<VertexId> class_representatives() const override { return {VertexId{}}; }
  int child_count(const TreeCursor& c) const override {
    const std::int64_t k = c.depth;
    if (k % 2 == 0) return 1;
    if (k == 1) return 2;
    for (const auto& [a, b] : spec_.intervals) {
      if (k < a) break;
      if (k < b) return 2;
    }
    return 1;
  }

 private:
  CounterexampleSpec spec_;
};

class ControlledTree final : public TreeGraph {
 public:
  explicit ControlledTree(ControlledTreeSpec spec) : spec_(std::move(spec)) {}
  std::string family() const override { return "controlled"; }
  int max_out_degree() const override { return spec_.path_mode ? 3 : 2; }
  std::optional<int> transitivity_radius() const override {
    if (spec_.path_mode) return 2;
    return std::nullopt;
  }
  std::string equivalence_label(const VertexId& v) const override {
    const TreeCursor c = cursor(v);
    if (c.mode == kRay) return "ray";
    return "T@" + std::to_string(c.depth);
  }
  // The root sees the densest branching because gaps never shrink.
  std::vector<VertexId> class_representatives() const override {
    std::vector<VertexId> reps{VertexId{}};
    if (spec_.path_mode) reps.push_back(VertexId{tree_children(0)});
    return reps;
  }
  int child_count(const TreeCursor& c) const override {
    if (c.mode == kRay) return 1;
    return tree_children(c.depth) + (spec_.path_mode ? 1 : 0);
  }

 protected:
  std::int32_t child_mode(const TreeCursor& c, int index) const override {
    if (c.mode == kRay) return kRay;
    return index < tree_children(c.depth) ? kTree : kRay;
  }

 private:
  static constexpr std::int32_t kTree = 0;
  static constexpr std::int32_t kRay = 1;
  int tree_children(std::int64_t level) const {
    return spec_.levels.contains(level) ? 2 : 1;
  }
  ControlledTreeSpec spec_;
};

// ---------------------------------------------------------------------------

class OrientedLattice final : public GameGraph {
 public:
  explicit OrientedLattice(OrientedLatticeSpec spec) : spec_(std::move(spec)) {
    const std::size_t dim = spec_.direction.size();
    if (dim == 0) throw SpecError("lattice direction must be non-empty");
    if (vec_gcd(spec_.direction) != 1) {
      throw SpecError("lattice direction " + format_vec(spec_.direction) +
                      " must have coordinate gcd 1");
    }
    if (spec_.offsets.empty()) throw SpecError("lattice offsets must be non-empty");
    for (const IntVec& o : spec_.offsets) {
      if (o.size() != dim) {
        throw SpecError("offset " + format_vec(o) + " has the wrong dimension");
      }
      if (dot(o, spec_.direction) <= 0) {
        throw SpecError("offset " + format_vec(o) + " has non-positive dot product with " +
                        format_vec(spec_.direction));
      }
    }
    std::sort(spec_.offsets.begin(), spec_.offsets.end());
    if (std::adjacent_find(spec_.offsets.begin(), spec_.offsets.end()) !=
        spec_.offsets.end()) {
      throw SpecError("duplicate lattice offset");
    }
    if (spec_.periods.empty()) spec_.periods.assign(dim, 1);
    if (spec_.periods.size() != dim) throw SpecError("periods have the wrong dimension");
    for (std::int64_t p : spec_.periods) {
      if (p < 1) throw SpecError("periods must be positive");
    }
    for (const IntVec& r : spec_.mask) {
      if (r.size() != dim) throw SpecError("mask residue " + format_vec(r) + " has the wrong dimension");
      for (std::size_t i = 0; i < dim; ++i) {
        if (r[i] < 0 || r[i] >= spec_.periods[i]) {
          throw SpecError("mask residue " + format_vec(r) + " lies outside the period box");
        }
      }
      mask_.insert(r);
    }
    for (const IntVec& o : spec_.offsets) r_ = std::max(r_, norm2(o));
    if (mask_.empty() || mask_.count(IntVec(dim, 0))) {
      initial_ = VertexId(IntVec(dim, 0));
    } else {
      initial_ = VertexId(*mask_.begin());
    }
  }

  std::string family() const override { return spec_.family; }
  GraphKind kind() const override { return GraphKind::kLattice; }
  VertexId initial() const override { return initial_; }
  int max_out_degree() const override { return static_cast<int>(spec_.offsets.size()); }
  std::optional<int> transitivity_radius() const override {
    if (spec_.transitivity_radius) return spec_.transitivity_radius;
    if (mask_.empty() &&
        std::all_of(spec_.periods.begin(), spec_.periods.end(), [](auto p) { return p == 1; })) {
      return 0;
    }
    return std::nullopt;
  }

  std::vector<VertexId> out_neighbors(const VertexId& v) const override {
    check(v);
    std::vector<VertexId> out;
    out.reserve(spec_.offsets.size());
    IntVec w(v.size());
    for (const IntVec& o : spec_.offsets) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = v[i] + o[i];
      if (included(w)) out.emplace_back(w);
    }
    return out;
  }

  std::string equivalence_label(const VertexId& v) const override {
    check(v);
    return format_vec(residue(IntVec(v.words().begin(), v.words().end())));
  }

  std::vector<VertexId> class_representatives() const override {
    if (!mask_.empty()) {
      std::vector<VertexId> reps;
      for (const IntVec& r : mask_) reps.emplace_back(r);
      return reps;
    }
    std::vector<VertexId> reps;
    IntVec r(spec_.periods.size(), 0);
    while (true) {
      reps.emplace_back(r);
      std::size_t i = 0;
      while (i < r.size() && ++r[i] == spec_.periods[i]) r[i++] = 0;
      if (i == r.size()) break;
    }
    return reps;
  }

  int embedding_dim() const override { return static_cast<int>(spec_.direction.size()); }
  IntVec embed(const VertexId& v) const override {
    return IntVec(v.words().begin(), v.words().end());
  }
  IntVec orientation() const override { return spec_.direction; }
  double max_edge_length() const override { return r_; }

 private:
  IntVec residue(const IntVec& w) const {
    IntVec r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = floor_mod(w[i], spec_.periods[i]);
    return r;
  }
  bool included(const IntVec& w) const { return mask_.empty() || mask_.count(residue(w)) > 0; }
  void check(const VertexId& v) const {
    if (v.size() != spec_.direction.size() ||
        !included(IntVec(v.words().begin(), v.words().end()))) {
      throw StructuralError("invalid " + spec_.family + " vertex " + format_vertex(v));
    }
  }

  OrientedLatticeSpec spec_;
  std::set<IntVec> mask_;
  VertexId initial_;
  double r_ = 0.0;
};

// ---------------------------------------------------------------------------

class Tiling final : public GameGraph {
 public:
  explicit Tiling(const TilingSpec& spec) : p1_(spec.period1), p2_(spec.period2) {
    if (p1_.size() != 2 || p2_.size() != 2) throw SpecError("tiling periods must be 2-vectors");
    det_ = p1_[0] * p2_[1] - p1_[1] * p2_[0];
    if (det_ == 0) throw SpecError("tiling periods are linearly dependent");
    if (spec.vertices.empty()) throw SpecError("tiling needs at least one vertex");
    for (const IntVec& v : spec.vertices) {
      if (v.size() != 2) throw SpecError("tiling vertex " + format_vec(v) + " is not a 2-vector");
      if (class_of(v[0], v[1])) {
        throw SpecError("tiling vertex " + format_vec(v) +
                        " is a translate of an earlier vertex");
      }
      vertices_.push_back(v);
    }
    moves_.resize(vertices_.size());
    for (const TilingEdge& e : spec.edges) {
      if (e.from < 0 || e.from >= static_cast<int>(vertices_.size())) {
        throw SpecError("tiling edge source " + std::to_string(e.from) + " out of range");
      }
      if (e.dx == 0 && e.dy == 0) throw SpecError("tiling edge with zero displacement");
      const IntVec& v = vertices_[e.from];
      const std::int64_t tx = v[0] + e.dx;
      const std::int64_t ty = v[1] + e.dy;
      auto target = class_of(tx, ty);
      const std::string name = "edge " + format_vec(v) + " -> " + format_vec({tx, ty});
      if (!target) throw SpecError(name + " ends outside the vertex set");
      if (e.dx < 0 || e.dy < 0) {
        throw SpecError(name + " must point left to right and bottom to top");
      }
      const auto [a, b] = coefficients(tx - vertices_[*target][0], ty - vertices_[*target][1]);
      if (std::abs(a) > 1 || std::abs(b) > 1) {
        throw SpecError(name + " crosses beyond the adjacent domains");
      }
      moves_[e.from].push_back({e.dx, e.dy});
      r_ = std::max(r_, norm2({e.dx, e.dy}));
    }
    for (auto& m : moves_) {
      std::sort(m.begin(), m.end());
      if (std::adjacent_find(m.begin(), m.end()) != m.end()) {
        throw SpecError("duplicate tiling edge");
      }
    }
    u_ = spec.direction.empty() ? find_direction() : spec.direction;
    if (u_.size() != 2 || vec_gcd(u_) != 1) {
      throw SpecError("tiling direction must be a 2-vector with gcd 1");
    }
    for (std::size_t j = 0; j < moves_.size(); ++j) {
      for (const IntVec& m : moves_[j]) {
        if (dot(m, u_) <= 0) {
          throw SpecError("edge " + format_vec(vertices_[j]) + " + " + format_vec(m) +
                          " is not oriented along " + format_vec(u_));
        }
      }
    }
    radius_ = spec.transitivity_radius;
  }

  std::string family() const override { return "tiling"; }
  GraphKind kind() const override { return GraphKind::kLattice; }
  VertexId initial() const override { return VertexId(vertices_[0]); }
  int max_out_degree() const override {
    std::size_t m = 1;
    for (const auto& mv : moves_) m = std::max(m, mv.size());
    return static_cast<int>(m);
  }
  std::optional<int> transitivity_radius() const override { return radius_; }

  std::vector<VertexId> out_neighbors(const VertexId& v) const override {
    const int j = check(v);
    std::vector<VertexId> out;
    for (const IntVec& m : moves_[j]) out.push_back(VertexId{v[0] + m[0], v[1] + m[1]});
    return out;
  }
  std::string equivalence_label(const VertexId& v) const override {
    return "c" + std::to_string(check(v));
  }
  std::vector<VertexId> class_representatives() const override {
    std::vector<VertexId> reps;
    for (const IntVec& v : vertices_) reps.emplace_back(v);
    return reps;
  }
  int embedding_dim() const override { return 2; }
  IntVec embed(const VertexId& v) const override { return {v[0], v[1]}; }
  IntVec orientation() const override { return u_; }
  double max_edge_length() const override { return r_; }

 private:
  std::pair<std::int64_t, std::int64_t> coefficients(std::int64_t qx, std::int64_t qy) const {
    return {(qx * p2_[1] - qy * p2_[0]) / det_, (p1_[0] * qy - p1_[1] * qx) / det_};
  }
  std::optional<int> class_of(std::int64_t x, std::int64_t y) const {
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
      const std::int64_t qx = x - vertices_[j][0];
      const std::int64_t qy = y - vertices_[j][1];
      if ((qx * p2_[1] - qy * p2_[0]) % det_ == 0 && (p1_[0] * qy - p1_[1] * qx) % det_ == 0) {
        return static_cast<int>(j);
      }
    }
    return std::nullopt;
  }
  int check(const VertexId& v) const {
    std::optional<int> j;
    if (v.size() == 2) j = class_of(v[0], v[1]);
    if (!j) throw StructuralError("invalid tiling vertex " + format_vertex(v));
    return *j;
  }
  IntVec find_direction() const {
    constexpr std::int64_t kSearch = 16;
    for (std::int64_t l1 = 1; l1 <= 2 * kSearch; ++l1) {
      for (std::int64_t a = -l1; a <= l1; ++a) {
        const std::int64_t rest = l1 - std::abs(a);
        for (std::int64_t b : {-rest, rest}) {
          IntVec u{a, b};
          if (vec_gcd(u) != 1) continue;
          bool ok = true;
          for (const auto& mv : moves_)
            for (const IntVec& m : mv) ok = ok && dot(m, u) > 0;
          if (ok) return u;
          if (rest == 0) break;
        }
      }
    }
    throw SpecError("no integer direction orients every tiling edge");
  }

  IntVec p1_, p2_;
  std::int64_t det_ = 0;
  std::vector<IntVec> vertices_;
  std::vector<std::vector<IntVec>> moves_;
  IntVec u_;
  double r_ = 0.0;
  std::optional<int> radius_;
};

// ---------------------------------------------------------------------------

class HChain final : public GameGraph {
 public:
  explicit HChain(const HChainSpec& spec) : labels_(spec.vertices) {
    if (labels_.empty()) throw SpecError("H must have at least one vertex");
    std::map<std::string, std::int64_t> index;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index.emplace(labels_[i], static_cast<std::int64_t>(i)).second) {
        throw SpecError("duplicate H vertex '" + labels_[i] + "'");
      }
    }
    adj_.resize(labels_.size());
    for (const auto& [a, b] : spec.edges) {
      auto ia = index.find(a);
      auto ib = index.find(b);
      if (ia == index.end() || ib == index.end()) {
        throw SpecError("H edge {" + a + "," + b + "} names an unknown vertex");
      }
      if (ia->second == ib->second) throw SpecError("H edge {" + a + "," + a + "} is a loop");
      adj_[ia->second].push_back(ib->second);
      adj_[ib->second].push_back(ia->second);
    }
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      auto& a = adj_[i];
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
        throw SpecError("duplicate H edge at '" + labels_[i] + "'");
      }
      if (a.empty()) {
        throw SpecError("H vertex '" + labels_[i] + "' is isolated and would be a sink");
      }
    }
  }

  std::string family() const override { return "hchain"; }
  GraphKind kind() const override { return GraphKind::kLattice; }
  VertexId initial() const override { return VertexId{0, 0}; }
  int max_out_degree() const override {
    std::size_t m = 1;
    for (const auto& a : adj_) m = std::max(m, a.size());
    return static_cast<int>(m);
  }
  std::optional<int> transitivity_radius() const override { return 0; }

  std::vector<VertexId> out_neighbors(const VertexId& v) const override {
    check(v);
    std::vector<VertexId> out;
    for (std::int64_t w : adj_[v[1]]) out.push_back(VertexId{v[0] + 1, w});
    return out;
  }
  std::string equivalence_label(const VertexId& v) const override {
    check(v);
    return labels_[v[1]];
  }
  std::vector<VertexId> class_representatives() const override {
    std::vector<VertexId> reps;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      reps.push_back(VertexId{0, static_cast<std::int64_t>(i)});
    }
    return reps;
  }
  std::string format_vertex(const VertexId& v) const override {
    if (v.size() != 2 || v[1] < 0 || v[1] >= static_cast<std::int64_t>(labels_.size())) {
      return GameGraph::format_vertex(v);
    }
    return labels_[v[1]] + "@" + std::to_string(v[0]);
  }
  VertexId parse_vertex(std::string_view text) const override {
    const auto at = text.rfind('@');
    if (at == std::string_view::npos) throw SpecError("H-chain vertex must look like label@copy");
    const std::string label(text.substr(0, at));
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw SpecError("unknown H vertex '" + label + "'");
    const std::string copy(text.substr(at + 1));
    std::size_t used = 0;
    std::int64_t i = 0;
    try {
      i = std::stoll(copy, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != copy.size()) throw SpecError("bad copy index '" + copy + "'");
    return VertexId{i, it - labels_.begin()};
  }
  int embedding_dim() const override { return 1; }
  IntVec embed(const VertexId& v) const override { return {v[0]}; }
  IntVec orientation() const override { return {1}; }
  double max_edge_length() const override { return 1.0; }

 private:
  void check(const VertexId& v) const {
    if (v.size() != 2 || v[1] < 0 || v[1] >= static_cast<std::int64_t>(labels_.size())) {
      throw StructuralError("invalid H-chain vertex " + GameGraph::format_vertex(v));
    }
  }
  std::vector<std::string> labels_;
  std::vector<std::vector<std::int64_t>> adj_;
};

// ---------------------------------------------------------------------------

class ExplicitGraph final : public GameGraph {
 public:
  explicit ExplicitGraph(const ExplicitGraphSpec& spec) : names_(spec.nodes) {
    if (names_.empty()) throw SpecError("explicit graph needs at least one node");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], static_cast<std::int64_t>(i)).second) {
        throw SpecError("duplicate node '" + names_[i] + "'");
      }
    }
    adj_.resize(names_.size());
    for (const auto& [from, tos] : spec.edges) {
      const std::int64_t f = lookup(from);
      for (const std::string& to : tos) adj_[f].push_back(lookup(to));
    }
    initial_ = spec.initial.empty() ? 0 : lookup(spec.initial);
    std::size_t m = 1;
    for (const auto& a : adj_) m = std::max(m, a.size());
    max_degree_ = spec.max_out_degree.value_or(static_cast<int>(m));
    if (max_degree_ < 1) throw SpecError("max_out_degree must be positive");
  }

  std::string family() const override { return "explicit"; }
  GraphKind kind() const override { return GraphKind::kExplicit; }
  VertexId initial() const override { return VertexId{initial_}; }
  int max_out_degree() const override { return max_degree_; }
  std::optional<int> transitivity_radius() const override { return std::nullopt; }

  std::vector<VertexId> out_neighbors(const VertexId& v) const override {
    std::vector<VertexId> out;
    for (std::int64_t w : adj_[check(v)]) out.push_back(VertexId{w});
    return out;
  }
  std::string equivalence_label(const VertexId& v) const override { return names_[check(v)]; }
  std::vector<VertexId> class_representatives() const override {
    std::vector<VertexId> reps;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      reps.push_back(VertexId{static_cast<std::int64_t>(i)});
    }
    return reps;
  }
  std::string format_vertex(const VertexId& v) const override {
    if (v.size() == 1 && v[0] >= 0 && v[0] < static_cast<std::int64_t>(names_.size())) {
      return names_[v[0]];
    }
    return GameGraph::format_vertex(v);
  }
  VertexId parse_vertex(std::string_view text) const override {
    return VertexId{lookup(std::string(text))};
  }

 private:
  std::int64_t lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw SpecError("unknown node '" + name + "'");
    return it->second;
  }
  std::size_t check(const VertexId& v) const {
    if (v.size() != 1 || v[0] < 0 || v[0] >= static_cast<std::int64_t>(names_.size())) {
      throw StructuralError("invalid explicit vertex " + GameGraph::format_vertex(v));
    }
    return static_cast<std::size_t>(v[0]);
  }
  std::vector<std::string> names_;
  std::map<std::string, std::int64_t> index_;
  std::vector<std::vector<std::int64_t>> adj_;
  std::int64_t initial_ = 0;
  int max_degree_ = 1;
};

}  // namespace

std::int64_t dot(const IntVec& a, const IntVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) s += a[i] * b[i];
  return s;
}

CounterexampleSpec CounterexampleSpec::default_schedule() {
  CounterexampleSpec spec;
  // a_m = 2^(2^(2m)), b_m = 2^(2^(2m+1)); m = 2 already needs b = 2^32 and
  // m = 3 does not fit.
  for (int m = 0;; ++m) {
    const int ea = 1 << (2 * m);
    const int eb = 1 << (2 * m + 1);
    if (ea >= 63) break;
    const std::int64_t a = std::int64_t{1} << ea;
    const std::int64_t b =
        eb >= 63 ? std::numeric_limits<std::int64_t>::max() : std::int64_t{1} << eb;
    spec.intervals.emplace_back(a, b);
  }
  return spec;
}

bool LevelSet::contains(std::int64_t level) const {
  if (level < 0) return false;
  switch (rule) {
    case Rule::kList: return std::binary_search(levels.begin(), levels.end(), level);
    case Rule::kAll: return true;
    case Rule::kEvery: return level % step == 0;
    case Rule::kSquares: {
      auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(level)));
      while (r * r > level) --r;
      while ((r + 1) * (r + 1) <= level) ++r;
      return r * r == level;
    }
  }
  return false;
}

std::int64_t LevelSet::count_through(std::int64_t level) const {
  if (level < 0) return 0;
  switch (rule) {
    case Rule::kList:
      return std::upper_bound(levels.begin(), levels.end(), level) - levels.begin();
    case Rule::kAll: return level + 1;
    case Rule::kEvery: return level / step + 1;
    case Rule::kSquares: {
      auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(level)));
      while (r * r > level) --r;
      while ((r + 1) * (r + 1) <= level) ++r;
      return r + 1;
    }
  }
  return 0;
}

GraphPtr make_dary_tree(const DaryTreeSpec& spec) {
  if (spec.d < 2) throw SpecError("d-ary tree needs d >= 2, got " + std::to_string(spec.d));
  return std::make_shared<DaryTree>(spec.d);
}

GraphPtr make_counterexample_tree(const CounterexampleSpec& spec) {
  std::int64_t prev_end = std::numeric_limits<std::int64_t>::min();
  for (const auto& [a, b] : spec.intervals) {
    if (a >= b) {
      throw SpecError("empty branch interval [" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    if (a < prev_end) {
      throw SpecError("branch interval [" + std::to_string(a) + "," + std::to_string(b) +
                      ") overlaps or precedes the previous one");
    }
    prev_end = b;
  }
  return std::make_shared<CounterexampleTree>(spec);
}

GraphPtr make_controlled_tree(const ControlledTreeSpec& spec) {
  const LevelSet& L = spec.levels;
  switch (L.rule) {
    case LevelSet::Rule::kList: {
      if (L.levels.empty() || L.levels.front() != 0) {
        throw SpecError("level set must start with level 0");
      }
      for (std::size_t i = 1; i < L.levels.size(); ++i) {
        if (L.levels[i] <= L.levels[i - 1]) {
          throw SpecError("level set must be strictly increasing");
        }
        if (i >= 2 && L.levels[i] - L.levels[i - 1] < L.levels[i - 1] - L.levels[i - 2]) {
          throw SpecError("level gaps must be non-decreasing (gap before " +
                          std::to_string(L.levels[i]) + " shrinks)");
        }
      }
      break;
    }
    case LevelSet::Rule::kEvery:
      if (L.step < 1) throw SpecError("level step must be >= 1");
      break;
    case LevelSet::Rule::kAll:
    case LevelSet::Rule::kSquares:
      break;
  }
  return std::make_shared<ControlledTree>(spec);
}

GraphPtr make_oriented_lattice(const OrientedLatticeSpec& spec) {
  return std::make_shared<OrientedLattice>(spec);
}

GraphPtr make_line() {
  OrientedLatticeSpec spec;
  spec.offsets = {{1}};
  spec.direction = {1};
  spec.family = "line";
  return make_oriented_lattice(spec);
}

GraphPtr make_grid() {
  OrientedLatticeSpec spec;
  spec.offsets = {{1, 0}, {0, 1}};
  spec.direction = {1, 1};
  spec.family = "grid";
  return make_oriented_lattice(spec);
}

GraphPtr make_tiling(const TilingSpec& spec) { return std::make_shared<Tiling>(spec); }

GraphPtr make_h_chain(const HChainSpec& spec) { return std::make_shared<HChain>(spec); }

GraphPtr make_explicit_graph(const ExplicitGraphSpec& spec) {
  return std::make_shared<ExplicitGraph>(spec);
}

}  // namespace dirgame
