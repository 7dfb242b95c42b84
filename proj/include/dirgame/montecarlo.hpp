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

#ifndef DIRGAME_MONTECARLO_HPP_
#define DIRGAME_MONTECARLO_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dirgame/errors.hpp"
#include "dirgame/generators.hpp"
#include "dirgame/payoff.hpp"
#include "dirgame/value.hpp"

namespace dirgame {

/// One-sided Clopper-Pearson upper limit for a binomial proportion.
double clopper_pearson_upper(std::size_t successes, std::size_t trials, double level = 0.999);

struct ExperimentConfig {
  GraphPtr graph;
  std::optional<VertexId> start;  // defaults to graph->initial()
  PayoffDistribution distribution = PayoffDistribution::bernoulli(0.5);
  std::vector<std::pair<VertexId, double>> overrides;  // pinned payoffs
  std::vector<int> n_list;
  std::size_t samples = 100;
  std::uint64_t master_seed = 1;
  int threads = 1;
  SolverKind solver = SolverKind::kAuto;
  std::size_t max_states = 100'000'000;
  bool timing = false;  // solve_ms stays 0 unless set, keeping outputs byte-stable
};

struct SampleRecord {
  int n = 0;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  double solve_ms = 0.0;
};

struct ExperimentResult {
  std::vector<SampleRecord> records;  // sorted by (n, index)
  bool partial = false;
  std::string error;
  std::optional<ErrorKind> error_kind;
};

/// Bijective in (n, index) for n < 2^24 and index < 2^40 under a fixed
/// master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, int n, std::size_t index);

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Values of one horizon sampled under a master seed (used for independent
/// batches such as the bootstrap's E[V_{n-k}] estimate).
std::vector<double> sample_values(const ExperimentConfig& config, int n);

struct SummaryStats {
  int n = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double var = 0.0;  // unbiased; 0 for a single record
  std::vector<double> values;

  /// Frequency of |V - mean| >= t.
  std::size_t tail_count(double t) const;
  double tail(double t) const;
};

SummaryStats summarize_values(int n, std::vector<double> values);
std::vector<SummaryStats> summarize(const std::vector<SampleRecord>& records);

enum class Verdict { kPass, kUninformative, kFail };
std::string to_string(Verdict v);

struct BoundCheck {
  std::string family;  // transient-tail | double-exp-tail | bootstrap | subadditivity
  int n = 0;
  double t = 0.0;
  std::size_t count = 0;
  double tail = 0.0;
  double tail_ucl = 0.0;
  double bound = 0.0;
  Verdict verdict = Verdict::kFail;
  std::string note;
};

/// pass iff the upper confidence limit is within the bound; uninformative
/// iff the bound is >= 1.
Verdict tail_verdict(double tail_ucl, double bound);

/// Two-sided tail around the empirical mean vs 2 exp(-t^2 n^2 / (2 h_n)).
std::vector<BoundCheck> check_transient_tail(const SummaryStats& stats, std::int64_t h_n,
                                     const std::vector<double>& t_grid, double level = 0.999);

/// Tail at t + 2t^2 around the empirical mean vs exp(-exp(t^2 n / 4) / 6).
std::vector<BoundCheck> check_double_exp_tail(const SummaryStats& stats,
                                            const std::vector<double>& t_grid,
                                            double level = 0.999);

struct BootstrapCondition {
  double lhs = 0.0;  // k log d + 2 log 2
  double rhs = 0.0;  // t^2 (n - k)
  double slack = 0.0;
  bool holds = false;
};

BootstrapCondition bootstrap_condition(int d, int n, int k, double t);

/// Both one-sided events {n V_n - (n-k) E[V_{n-k}] >= (n-k) t + k} and
/// {... <= -(n-k) t - k} against exp(-d^(k/2) / 6). `mean_n_minus_k` must
/// come from an independent batch. Throws DomainError when the block
/// condition fails.
std::vector<BoundCheck> check_bootstrap(int d, int n, int k, double t,
                                        const std::vector<double>& values_n,
                                        double mean_n_minus_k, double level = 0.999);

struct SubadditivityCheck {
  int m = 0;
  int n = 0;
  std::size_t count = 0;
  double lhs = 0.0;           // (m+n) E[V_{m+n}]
  double split = 0.0;         // m E[V_m] + n E[V_n]
  double slack_term = 0.0;
  double stat_slack = 0.0;
  double rhs = 0.0;           // split - slack_term - stat_slack
  double margin = 0.0;        // lhs - split
  bool holds = false;
  Verdict verdict = Verdict::kFail;
};

/// Slack for tree games: n (psi(n, eps_n) + 2 eps_n) + 1.
double tree_subadditivity_slack(int n, double psi_value, double epsilon);

/// Statistical slack is z times the standard error of lhs - split. The
/// verdict is uninformative when the right-hand side is not positive.
SubadditivityCheck check_subadditivity(const SummaryStats& sm, const SummaryStats& sn,
                                       const SummaryStats& smn, double slack_term,
                                       double z = 3.090232306167813);

struct VinftyEstimate {
  double delta = 0.25;
  double estimate = 0.0;
  double slope = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int largest_n = 0;
  double largest_n_mean = 0.0;
  std::size_t resamples = 0;
};

/// Least squares for E[V_n] = v + c n^(-delta) with a seeded bootstrap
/// interval (95%).
VinftyEstimate estimate_vinfty(const std::vector<SummaryStats>& summaries, double delta,
                               std::uint64_t seed = 1, std::size_t resamples = 1000);

struct OscillationReport {
  int n_branchy = 0;
  int n_pathy = 0;
  SummaryStats branchy;
  SummaryStats pathy;
  double half_width_branchy = 0.0;  // normal 99.9% two-sided
  double half_width_pathy = 0.0;
  double margin = 0.02;
  bool oscillates = false;
};

OscillationReport counterexample_oscillation(const ExperimentConfig& config, int n_branchy,
                                             int n_pathy, double margin = 0.02);

std::string samples_csv(const std::vector<SampleRecord>& records);

struct SummaryRow {
  int n = 0;
  std::size_t count = 0;
  std::optional<double> mean, var, t, tail, tail_ucl, bound;
  std::string verdict;
  std::string family;
};

std::vector<SummaryRow> summary_rows(const std::vector<SummaryStats>& summaries);
std::vector<SummaryRow> summary_rows(const std::vector<BoundCheck>& checks);
SummaryRow summary_row(const SubadditivityCheck& check);
std::string summary_csv(const std::vector<SummaryRow>& rows);

}  // namespace dirgame

#endif  // DIRGAME_MONTECARLO_HPP_
