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

#include <doctest.h>

#include <cmath>

#include "dirgame/errors.hpp"
#include "dirgame/generators.hpp"
#include "dirgame/partitions.hpp"

using namespace dirgame;

TEST_CASE("oriented partition indices") {
  auto line = make_line();
  auto fam = oriented_partition(line, {1});
  CHECK(fam.index(VertexId{0}, VertexId{0}) == 0);
  CHECK(fam.index(VertexId{0}, VertexId{3}) == 6);
  CHECK(fam.index(VertexId{0}, VertexId{-2}) == 5);
  auto grid = make_grid();
  auto g = oriented_partition(grid, {1, 1});
  CHECK(g.index(VertexId{0, 0}, VertexId{2, 1}) == 6);
  CHECK(g.index(VertexId{0, 0}, VertexId{1, -1}) == 1);
  CHECK(g.index(VertexId{0, 0}, VertexId{0, 0}) == 0);
}

TEST_CASE("tree partition indices") {
  auto tree = make_dary_tree({2});
  auto fam = tree_partition(tree);
  const VertexId z{0};
  CHECK(fam.index(z, z) == 0);
  CHECK(fam.index(z, VertexId{0, 1}) == 1);
  CHECK(fam.index(z, VertexId{0, 1, 0}) == 2);
  CHECK(fam.index(z, VertexId{1}) == 1);
  CHECK(fam.index(z, VertexId{1, 0, 0}) == 1);
  CHECK(fam.index(z, VertexId{}) == 1);
  CHECK(fam.index(z, VertexId{0, 0, 0, 1}) == 3);
}

TEST_CASE("trivial partition numbers descendants breadth first") {
  auto grid = make_grid();
  auto fam = trivial_partition(grid);
  const VertexId z{0, 0};
  CHECK(fam.index(z, z) == 0);
  // offsets are kept in lexicographic order: (0,1) before (1,0)
  CHECK(fam.index(z, VertexId{0, 1}) == 1);
  CHECK(fam.index(z, VertexId{1, 0}) == 2);
  CHECK(fam.index(z, VertexId{0, 2}) == 3);
  CHECK(fam.index(z, VertexId{1, 1}) == 4);
  CHECK(fam.index(z, VertexId{2, 0}) == 5);
  CHECK_THROWS_AS(fam.index(z, VertexId{-1, 0}), DomainError);
}

TEST_CASE("validate_adapted") {
  auto line = make_line();
  auto rep = validate_adapted(*line, oriented_partition(line, {1}), VertexId{0}, 8);
  CHECK(rep.ok);
  auto tree = make_dary_tree({2});
  auto trep = validate_adapted(*tree, tree_partition(tree), tree->initial(), 8);
  CHECK(trep.ok);
  CHECK(trep.prefixes > 256);
  CHECK(validate_adapted(*make_grid(), trivial_partition(make_grid()), VertexId{0, 0}, 6).ok);

  // parity index: every other step lands in part 1 again
  auto shuffled = custom_partition([](const VertexId& z, const VertexId& w) -> std::int64_t {
    return w == z ? 0 : 1 + std::abs(w[0] - z[0]) % 2;
  });
  auto bad = validate_adapted(*line, shuffled, VertexId{0}, 8);
  CHECK_FALSE(bad.ok);
  CHECK(bad.repeated_index >= 1);
  CHECK(bad.witness.size() >= 3);
  CHECK_THROWS_AS(validate_adapted(*line, shuffled, VertexId{0}, 11), ResourceError);
}

TEST_CASE("transient speeds") {
  auto line = make_line();
  auto lp = transient_profile(*line, oriented_partition(line), 50);
  for (int n = 1; n <= 50; ++n) {
    CHECK(lp.h[n] == 2 * n);
    CHECK(static_cast<double>(lp.reach2n_max[n]) == 2 * n + 1);
  }

  auto tree = make_dary_tree({2});
  auto tp = transient_profile(*tree, tree_partition(tree), 20);
  for (int n = 1; n <= 20; ++n) {
    CHECK(tp.h[n] == n);
    CHECK(static_cast<double>(tp.reach2n_max[n]) == std::ldexp(1.0, 2 * n + 1) - 1);
  }
  // enumerated oracle for the closed form
  for (int n = 1; n <= 6; ++n) {
    auto rs = reach_set(*tree, tree->initial(), n);
    auto fam = tree_partition(tree);
    std::int64_t h = 0;
    for (const auto& level : rs.levels)
      for (const auto& v : level) h = std::max(h, fam.index(tree->initial(), v));
    CHECK(tp.h[n] == h);
  }

  auto grid = make_grid();
  auto gp = transient_profile(*grid, oriented_partition(grid, {1, 1}), 20);
  for (int n = 1; n <= 20; ++n) CHECK(gp.h[n] == 2 * n);
  CHECK(transient_speed(*grid, oriented_partition(grid, {1, 1}), 7) == 14);
}

TEST_CASE("psi") {
  CHECK(psi(4, 0.5, 4, 511.0L) == doctest::Approx(std::exp(-0.5) * 511).epsilon(1e-12));
  CHECK(psi(4, 0.5, 4, 511.0L) == doctest::Approx(309.93).epsilon(1e-4));
  CHECK(psi(10, 0.1, 20, 21.0L) == doctest::Approx(20.48).epsilon(1e-3));
  CHECK(psi(10, 50.0, 20, 21.0L) == 0.0);
  // log form stays finite where the plain form overflows
  CHECK(std::isfinite(static_cast<double>(log_psi(2000, 1e-3, 2000, 1e4000L))));
  CHECK_THROWS_AS(psi(0, 0.5, 1, 1.0L), DomainError);
  CHECK_THROWS_AS(psi(4, -0.5, 4, 1.0L), DomainError);
}

TEST_CASE("epsilon rule") {
  EpsilonRule rule;
  CHECK(rule(16, 0.25) == doctest::Approx(1.0));
  EpsilonRule fixed{1.0, 0.5};
  CHECK(fixed(100, 0.25) == doctest::Approx(0.1));
}

TEST_CASE("delta-transience verdicts") {
  std::vector<int> long_range, short_range;
  for (int n = 10; n <= 200; ++n) long_range.push_back(n);
  for (int n = 10; n <= 60; ++n) short_range.push_back(n);
  auto line = make_line();
  auto r = check_delta_transient(*line, oriented_partition(line), 0.25, long_range);
  CHECK(r.verdict == TransienceVerdict::kAccepted);
  CHECK(r.samples.size() == long_range.size());
  auto tree = make_dary_tree({2});
  auto t = check_delta_transient(*tree, tree_partition(tree), 0.25, short_range);
  CHECK(t.verdict == TransienceVerdict::kRejected);
  CHECK_THROWS_AS(check_delta_transient(*line, oriented_partition(line), 0.7, long_range),
                  DomainError);
  CHECK_THROWS_AS(check_delta_transient(*line, oriented_partition(line), 0.0, long_range),
                  DomainError);
}

TEST_CASE("oriented reach bound") {
  CHECK(oriented_reach_bound(5, 1.0, 1.0) == 5);
  CHECK(oriented_reach_bound(3, 1.0, std::sqrt(2.0)) == 5);
  CHECK(oriented_reach_bound(0, 1.0, 1.0) == 0);
}
