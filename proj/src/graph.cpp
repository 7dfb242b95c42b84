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

#include "dirgame/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "dirgame/errors.hpp"

namespace dirgame {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view context) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw SpecError("cannot parse integer '" + std::string(text) + "' in " +
                    std::string(context));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    std::size_t end = text.find(sep, begin);
    parts.push_back(text.substr(begin, end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string GameGraph::format_vertex(const VertexId& v) const {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ')';
  return out;
}

VertexId GameGraph::parse_vertex(std::string_view text) const {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  std::vector<std::int64_t> words;
  if (!trim(text).empty()) {
    for (auto part : split(text, ',')) words.push_back(parse_int(trim(part), "vertex key"));
  }
  return VertexId(std::move(words));
}

std::vector<std::int64_t> GameGraph::embed(const VertexId& v) const {
  (void)v;
  throw SpecError("graph family '" + family() + "' has no lattice embedding");
}

std::optional<std::vector<long double>> GameGraph::level_counts(
    const VertexId& z, int n) const {
  (void)z;
  (void)n;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TreeGraph

TreeCursor TreeGraph::cursor(const VertexId& v) const {
  TreeCursor c;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t w = v[i];
    if (w < 0 || w >= child_count(c)) {
      throw StructuralError("invalid " + family() + " vertex " + format_vertex(v) +
                            ": no child " + std::to_string(w) + " at depth " +
                            std::to_string(i));
    }
    c = child(c, static_cast<int>(w));
  }
  return c;
}

std::vector<VertexId> TreeGraph::out_neighbors(const VertexId& v) const {
  const TreeCursor c = cursor(v);
  const int k = child_count(c);
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.push_back(v.extended(i));
  return out;
}

std::string TreeGraph::format_vertex(const VertexId& v) const {
  std::string out = "r";
  for (std::int64_t w : v.words()) {
    out += '.';
    out += std::to_string(w);
  }
  return out;
}

VertexId TreeGraph::parse_vertex(std::string_view text) const {
  text = trim(text);
  if (text.empty() || text.front() != 'r') {
    throw SpecError("tree vertex must look like r or r.0.1, got '" +
                    std::string(text) + "'");
  }
  std::vector<std::int64_t> words;
  text.remove_prefix(1);
  if (!text.empty()) {
    if (text.front() != '.') {
      throw SpecError("tree vertex must look like r or r.0.1");
    }
    text.remove_prefix(1);
    for (auto part : split(text, '.')) words.push_back(parse_int(part, "tree vertex"));
  }
  VertexId v(std::move(words));
  cursor(v);
  return v;
}

std::optional<std::vector<long double>> TreeGraph::level_counts(
    const VertexId& z, int n) const {
  // Aggregate vertices by (depth, mode); the child count depends on nothing
  // else, so each class expands identically.
  std::map<std::pair<std::int64_t, std::int32_t>, long double> level;
  const TreeCursor start = cursor(z);
  level[{start.depth, start.mode}] = 1.0L;
  std::vector<long double> counts;
  counts.reserve(static_cast<std::size_t>(n) + 1);
  counts.push_back(1.0L);
  for (int i = 0; i < n; ++i) {
    std::map<std::pair<std::int64_t, std::int32_t>, long double> next;
    long double total = 0.0L;
    for (const auto& [cls, mult] : level) {
      TreeCursor c{cls.first, cls.second, 0};
      const int k = child_count(c);
      for (int j = 0; j < k; ++j) {
        const TreeCursor ch = child(c, j);
        next[{ch.depth, ch.mode}] += mult;
        total += mult;
      }
    }
    counts.push_back(total);
    level = std::move(next);
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Reach sets

std::vector<std::size_t> ReachSet::counts() const {
  std::vector<std::size_t> out;
  out.reserve(levels.size());
  for (const auto& l : levels) out.push_back(l.size());
  return out;
}

std::size_t ReachSet::total() const {
  std::size_t t = 0;
  for (const auto& l : levels) t += l.size();
  return t;
}

ReachSet reach_set(const GameGraph& g, const VertexId& z, int n,
                   const ReachOptions& options) {
  if (n < 0) throw DomainError("reach_set depth must be >= 0");
  ReachSet out;
  out.start = z;
  out.depth = n;
  out.levels.push_back({z});
  std::unordered_set<VertexId, VertexIdHash> seen{z};
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    std::vector<VertexId> next;
    for (const VertexId& v : out.levels.back()) {
      for (VertexId& w : g.out_neighbors(v)) {
        if (seen.insert(w).second) {
          next.push_back(std::move(w));
          if (++total > options.max_vertices) {
            throw ResourceError("reach set from " + g.format_vertex(z) +
                                " exceeds the budget of " +
                                std::to_string(options.max_vertices) +
                                " vertices at level " + std::to_string(i + 1));
          }
        }
      }
    }
    out.levels.push_back(std::move(next));
  }
  return out;
}

std::vector<long double> reach_level_counts(const GameGraph& g,
                                            const VertexId& z, int n,
                                            const ReachOptions& options) {
  if (n < 0) throw DomainError("reach depth must be >= 0");
  if (auto closed = g.level_counts(z, n)) return *std::move(closed);
  const ReachSet rs = reach_set(g, z, n, options);
  std::vector<long double> out;
  for (std::size_t c : rs.counts()) out.push_back(static_cast<long double>(c));
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kSink: return "sink";
    case ViolationKind::kDegree: return "degree";
    case ViolationKind::kCycle: return "cycle";
    case ViolationKind::kInvalidVertex: return "invalid-vertex";
  }
  return "unknown";
}

ValidationReport validate_region(const GameGraph& g, const VertexId& z, int n,
                                 const ReachOptions& options) {
  if (n < 0) throw DomainError("validation depth must be >= 0");
  ValidationReport report;

  std::vector<VertexId> verts{z};
  std::vector<std::size_t> parent{0};
  std::vector<std::vector<std::size_t>> adj(1);
  std::unordered_map<VertexId, std::size_t, VertexIdHash> index{{z, 0}};

  auto path_to = [&](std::size_t i) {
    std::vector<std::string> path;
    while (true) {
      path.push_back(g.format_vertex(verts[i]));
      if (i == 0) break;
      i = parent[i];
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  std::vector<std::size_t> frontier{0};
  const int max_degree = g.max_out_degree();
  for (int level = 0; level < n && !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t u : frontier) {
      std::vector<VertexId> nbrs;
      try {
        nbrs = g.out_neighbors(verts[u]);
      } catch (const StructuralError& e) {
        report.violations.push_back({ViolationKind::kInvalidVertex,
                                     g.format_vertex(verts[u]), path_to(u),
                                     e.what()});
        continue;
      }
      if (nbrs.empty()) {
        report.violations.push_back({ViolationKind::kSink,
                                     g.format_vertex(verts[u]), path_to(u),
                                     "out-degree 0"});
      } else if (static_cast<int>(nbrs.size()) > max_degree) {
        report.violations.push_back(
            {ViolationKind::kDegree, g.format_vertex(verts[u]), path_to(u),
             "out-degree " + std::to_string(nbrs.size()) + " exceeds " +
                 std::to_string(max_degree)});
      }
      for (VertexId& w : nbrs) {
        auto [it, inserted] = index.try_emplace(w, verts.size());
        if (inserted) {
          verts.push_back(std::move(w));
          parent.push_back(u);
          adj.emplace_back();
          next.push_back(it->second);
          if (verts.size() > options.max_vertices) {
            throw ResourceError("validation region exceeds the budget of " +
                                std::to_string(options.max_vertices) +
                                " vertices at level " + std::to_string(level + 1));
          }
        }
        adj[u].push_back(it->second);
      }
    }
    frontier = std::move(next);
  }
  report.vertices_explored = verts.size();

  // Iterative three-colour DFS over the explored subgraph.
  enum : char { kWhite, kGray, kBlack };
  std::vector<char> colour(verts.size(), kWhite);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  bool found_cycle = false;
  for (std::size_t root = 0; root < verts.size() && !found_cycle; ++root) {
    if (colour[root] != kWhite) continue;
    stack.push_back({root, 0});
    colour[root] = kGray;
    while (!stack.empty() && !found_cycle) {
      auto& [u, next_edge] = stack.back();
      if (next_edge < adj[u].size()) {
        const std::size_t w = adj[u][next_edge++];
        if (colour[w] == kGray) {
          std::vector<std::string> cycle;
          auto it = std::find_if(stack.begin(), stack.end(),
                                 [w](const auto& e) { return e.first == w; });
          for (; it != stack.end(); ++it) cycle.push_back(g.format_vertex(verts[it->first]));
          cycle.push_back(g.format_vertex(verts[w]));
          report.violations.push_back({ViolationKind::kCycle,
                                       g.format_vertex(verts[w]), cycle,
                                       "directed cycle of length " +
                                           std::to_string(cycle.size() - 1)});
          found_cycle = true;
        } else if (colour[w] == kWhite) {
          colour[w] = kGray;
          stack.push_back({w, 0});
        }
      } else {
        colour[u] = kBlack;
        stack.pop_back();
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace dirgame
