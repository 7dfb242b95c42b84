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
#include <set>
#include <sstream>

#include "dirgame/errors.hpp"
#include "dirgame/generators.hpp"
#include "dirgame/montecarlo.hpp"

using namespace dirgame;

namespace {

// P(X <= k) for X ~ Bin(n, p), summed directly
double binom_cdf(std::size_t k, std::size_t n, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
    s += std::exp(lc + i * std::log(p) + (n - i) * std::log1p(-p));
  }
  return s;
}

ExperimentConfig tree_config(std::vector<int> ns, std::size_t samples, std::uint64_t seed) {
  ExperimentConfig c;
  c.graph = make_dary_tree({2});
  c.distribution = PayoffDistribution::bernoulli(0.5);
  c.n_list = std::move(ns);
  c.samples = samples;
  c.master_seed = seed;
  return c;
}

}  // namespace

TEST_CASE("Clopper-Pearson upper limit") {
  CHECK(clopper_pearson_upper(0, 100, 0.999) ==
        doctest::Approx(1.0 - std::pow(0.001, 1.0 / 100)).epsilon(1e-12));
  CHECK(clopper_pearson_upper(100, 100) == 1.0);
  for (std::size_t k : {1, 5, 40, 77}) {
    const double u = clopper_pearson_upper(k, 100, 0.999);
    CHECK(u > k / 100.0);
    CHECK(binom_cdf(k, 100, u) == doctest::Approx(0.001).epsilon(1e-8));
  }
  const double u95 = clopper_pearson_upper(3, 50, 0.95);
  CHECK(binom_cdf(3, 50, u95) == doctest::Approx(0.05).epsilon(1e-8));
}

TEST_CASE("seed derivation is injective on a grid") {
  std::set<std::uint64_t> seen;
  for (int n = 1; n <= 40; ++n)
    for (std::size_t i = 0; i < 200; ++i) seen.insert(derive_seed(17, n, i));
  CHECK(seen.size() == 40 * 200);
  CHECK(derive_seed(17, 3, 4) != derive_seed(18, 3, 4));
}

TEST_CASE("run_experiment basics") {
  auto one = tree_config({1}, 1, 99);
  one.distribution = PayoffDistribution::bernoulli(1.0);
  auto r = run_experiment(one);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].value == 1.0);
  CHECK_FALSE(r.partial);

  auto c = tree_config({1}, 10000, 5);
  auto big = run_experiment(c);
  auto s = summarize(big.records);
  REQUIRE(s.size() == 1);
  CHECK(std::abs(s[0].mean - 0.75) < 0.02);
}

TEST_CASE("run_experiment is deterministic across thread counts") {
  auto c = tree_config({6, 3, 9}, 50, 12345);
  c.threads = 1;
  auto a = run_experiment(c);
  c.threads = 8;
  auto b = run_experiment(c);
  CHECK(samples_csv(a.records) == samples_csv(b.records));
  REQUIRE(a.records.size() == 150);
  CHECK(a.records.front().n == 3);
  CHECK(a.records.back().n == 9);
  CHECK(a.records[1].index == 1);
}

TEST_CASE("budget errors stop the run and keep earlier horizons") {
  ExperimentConfig c;
  c.graph = make_grid();
  c.n_list = {3, 500};
  c.samples = 4;
  c.max_states = 2000;
  auto r = run_experiment(c);
  CHECK(r.partial);
  REQUIRE(r.error_kind.has_value());
  CHECK(*r.error_kind == ErrorKind::kResource);
  CHECK(r.records.size() == 4);
}

TEST_CASE("summaries and tails") {
  auto eq = summarize_values(4, {0.5, 0.5, 0.5});
  CHECK(eq.var == 0.0);
  CHECK(eq.tail(0.1) == 0.0);
  auto two = summarize_values(4, {0.0, 1.0});
  CHECK(two.mean == 0.5);
  CHECK(two.tail(0.4) == 1.0);
  CHECK(two.var == 0.5);

  auto r = run_experiment(tree_config({10}, 500, 3));
  auto s = summarize(r.records).front();
  double prev = 1.0;
  for (double t = 0.0; t <= 0.5; t += 0.01) {
    CHECK(s.tail(t) <= prev);
    prev = s.tail(t);
  }
}

TEST_CASE("transient tail check") {
  auto constant = summarize_values(16, std::vector<double>(100, 0.3));
  for (const auto& c : check_transient_tail(constant, 16, {0.2, 0.3, 0.4})) {
    CHECK(c.tail == 0.0);
    CHECK(c.verdict != Verdict::kFail);
  }
  auto checks = check_transient_tail(constant, 16, {0.05, 0.3});
  CHECK(checks[0].bound == doctest::Approx(2 * std::exp(-0.02)));
  CHECK(checks[0].verdict == Verdict::kUninformative);
  CHECK(checks[1].bound == doctest::Approx(2 * std::exp(-0.72)));
  CHECK(checks[1].bound == doctest::Approx(0.973).epsilon(1e-3));
  CHECK(checks[1].verdict == Verdict::kPass);
  CHECK(tail_verdict(0.5, 0.4) == Verdict::kFail);
  CHECK(tail_verdict(0.5, 1.2) == Verdict::kUninformative);
  CHECK(to_string(Verdict::kUninformative) == "uninformative");
}

TEST_CASE("bootstrap check") {
  auto cond = bootstrap_condition(2, 40, 4, 0.34);
  CHECK(cond.lhs == doctest::Approx(6 * std::log(2.0)));
  CHECK(cond.rhs == doctest::Approx(0.1156 * 36));
  CHECK(cond.holds);
  CHECK(cond.slack < 0.01);
  CHECK_FALSE(bootstrap_condition(2, 10, 2, 0.1).holds);
  CHECK_THROWS_AS(check_bootstrap(2, 10, 2, 0.1, {0.5}, 0.5), DomainError);
  auto c = check_bootstrap(2, 40, 4, 0.35, std::vector<double>(300, 0.4), 0.4);
  REQUIRE(c.size() == 2);
  for (const auto& x : c) {
    CHECK(x.bound == doctest::Approx(std::exp(-4.0 / 6.0)));
    CHECK(x.tail == 0.0);
    CHECK(x.verdict == Verdict::kPass);
  }
}

TEST_CASE("subadditivity check") {
  auto c = summarize_values(10, std::vector<double>(50, 0.4));
  auto c20 = summarize_values(20, std::vector<double>(50, 0.4));
  auto r = check_subadditivity(c, c, c20, 0.0);
  CHECK(r.lhs == doctest::Approx(8.0));
  CHECK(r.split == doctest::Approx(8.0));
  CHECK(r.holds);
  auto c4 = summarize_values(4, std::vector<double>(50, 0.4));
  auto c14 = summarize_values(14, std::vector<double>(50, 0.4));
  CHECK_THROWS_AS(check_subadditivity(c4, c, c14, 0.0), DomainError);
  CHECK(tree_subadditivity_slack(10, 0.5, 0.25) == doctest::Approx(11.0));
}

TEST_CASE("v_infinity fit") {
  std::vector<SummaryStats> exact, flat;
  for (int n : {8, 16, 32, 64, 128}) {
    const double v = 0.4 + std::pow(n, -0.25);
    exact.push_back(summarize_values(n, {v, v}));
    flat.push_back(summarize_values(n, {0.7, 0.7, 0.7}));
  }
  auto e = estimate_vinfty(exact, 0.25);
  CHECK(std::abs(e.estimate - 0.4) < 1e-9);
  CHECK(std::abs(e.slope - 1.0) < 1e-9);
  auto f = estimate_vinfty(flat, 0.25);
  CHECK(f.estimate == doctest::Approx(0.7));
  CHECK(f.ci_high - f.ci_low == doctest::Approx(0.0));
  CHECK(f.largest_n == 128);
}

TEST_CASE("oscillation report on constant payoffs") {
  ExperimentConfig c;
  c.graph = make_counterexample_tree({{{1, 13}}});
  c.distribution = PayoffDistribution::constant(0.5);
  c.samples = 5;
  auto r = counterexample_oscillation(c, 12, 40);
  CHECK(r.branchy.mean == r.pathy.mean);
  CHECK_FALSE(r.oscillates);
  c.graph = make_dary_tree({2});
  CHECK_THROWS_AS(counterexample_oscillation(c, 12, 40), SpecError);
}

TEST_CASE("csv layouts") {
  std::vector<SampleRecord> recs = {{8, 0, 42, 0.375, 0.0}, {8, 1, 43, 1.0 / 3.0, 0.0}};
  CHECK(samples_csv(recs) ==
        "n,sample,seed,value,solve_ms\n8,0,42,0.375,0.000\n8,1,43,0.33333333333333331,0.000\n");
  auto s = summarize_values(8, {0.25, 0.75});
  auto rows = summary_rows(std::vector<SummaryStats>{s});
  auto checks = check_transient_tail(s, 8, {0.2});
  auto more = summary_rows(checks);
  rows.insert(rows.end(), more.begin(), more.end());
  const std::string csv = summary_csv(rows);
  std::istringstream in(csv);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  CHECK(header == "n,count,mean,var,t,tail,tail_ucl,bound,verdict,family");
  CHECK(first == "8,2,0.5,0.125,,,,,,summary");
  CHECK(second.rfind("8,2,,,0.20000000000000001,1,1,", 0) == 0);
  CHECK(second.substr(second.size() - 29) == ",uninformative,transient-tail");
}
