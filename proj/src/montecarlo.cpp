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

#include "dirgame/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include <boost/math/distributions/beta.hpp>

namespace dirgame {

double clopper_pearson_upper(std::size_t successes, std::size_t trials, double level) {
  if (trials == 0) throw DomainError("confidence limit needs at least one trial");
  if (successes > trials) throw DomainError("more successes than trials");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0,1)");
  if (successes == trials) return 1.0;
  boost::math::beta_distribution<double> dist(static_cast<double>(successes) + 1.0,
                                              static_cast<double>(trials - successes));
  return boost::math::quantile(dist, level);
}

std::uint64_t derive_seed(std::uint64_t master_seed, int n, std::size_t index) {
  const std::uint64_t key = mix64(master_seed ^ 0x5851f42d4c957f2dULL);
  const std::uint64_t word = (static_cast<std::uint64_t>(n) << 40) |
                             (static_cast<std::uint64_t>(index) & ((1ULL << 40) - 1));
  return mix64(word ^ key);
}

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Slot {
  SampleRecord record;
  bool ok = false;
  std::string error;
  std::optional<ErrorKind> kind;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (!config.graph) throw SpecError("experiment has no graph");
  if (config.samples < 1) throw SpecError("samples must be >= 1");
  if (config.n_list.empty()) throw SpecError("experiment needs at least one n");
  for (int n : config.n_list) {
    if (n < 1) throw DomainError("n must be >= 1, got " + std::to_string(n));
    if (n >= (1 << 24)) throw DomainError("n is too large");
  }
  std::vector<int> ns = config.n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const VertexId start = config.start.value_or(config.graph->initial());
  const int threads = resolve_threads(config.threads);

  ExperimentResult result;
  for (int n : ns) {
    std::optional<ValueSolver> solver;
    try {
      solver.emplace(config.graph, start, n, config.solver, config.max_states);
    } catch (const Error& e) {
      result.partial = true;
      result.error = "n=" + std::to_string(n) + ": " + e.what();
      result.error_kind = e.kind();
      break;
    }
    std::vector<Slot> slots(config.samples);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= slots.size()) return;
        Slot& slot = slots[i];
        slot.record.n = n;
        slot.record.index = i;
        slot.record.seed = derive_seed(config.master_seed, n, i);
        try {
          PayoffField field(slot.record.seed, config.distribution);
          for (const auto& [v, x] : config.overrides) field.set_override(v, x);
          const auto t0 = std::chrono::steady_clock::now();
          slot.record.value = solver->value(field);
          if (config.timing) {
            slot.record.solve_ms = std::chrono::duration<double, std::milli>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
          }
          slot.ok = true;
        } catch (const Error& e) {
          slot.error = e.what();
          slot.kind = e.kind();
        } catch (const std::exception& e) {
          slot.error = e.what();
          slot.kind = ErrorKind::kResource;
        }
      }
    };
    const int workers = std::min<int>(threads, static_cast<int>(slots.size()));
    if (workers <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    bool failed = false;
    for (const Slot& slot : slots) {
      if (slot.ok) {
        result.records.push_back(slot.record);
      } else if (!failed) {
        failed = true;
        result.partial = true;
        result.error = "n=" + std::to_string(n) + " sample " +
                       std::to_string(slot.record.index) + ": " + slot.error;
        result.error_kind = slot.kind;
      }
    }
    if (failed) break;
  }
  return result;
}

std::vector<double> sample_values(const ExperimentConfig& config, int n) {
  ExperimentConfig c = config;
  c.n_list = {n};
  ExperimentResult r = run_experiment(c);
  if (r.partial) {
    throw Error(r.error_kind.value_or(ErrorKind::kResource), r.error);
  }
  std::vector<double> out;
  out.reserve(r.records.size());
  for (const SampleRecord& rec : r.records) out.push_back(rec.value);
  return out;
}

// ---------------------------------------------------------------------------

std::size_t SummaryStats::tail_count(double t) const {
  std::size_t c = 0;
  for (double v : values) {
    if (std::abs(v - mean) >= t) ++c;
  }
  return c;
}

double SummaryStats::tail(double t) const {
  return count == 0 ? 0.0 : static_cast<double>(tail_count(t)) / static_cast<double>(count);
}

SummaryStats summarize_values(int n, std::vector<double> values) {
  if (values.empty()) throw DomainError("cannot summarize an empty record set");
  SummaryStats s;
  s.n = n;
  s.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.var = ss / static_cast<double>(s.count - 1);
  }
  s.values = std::move(values);
  return s;
}

std::vector<SummaryStats> summarize(const std::vector<SampleRecord>& records) {
  if (records.empty()) throw DomainError("cannot summarize an empty record set");
  std::map<int, std::vector<std::pair<std::size_t, double>>> by_n;
  for (const SampleRecord& r : records) by_n[r.n].emplace_back(r.index, r.value);
  std::vector<SummaryStats> out;
  for (auto& [n, vals] : by_n) {
    std::sort(vals.begin(), vals.end());
    std::vector<double> v;
    v.reserve(vals.size());
    for (const auto& p : vals) v.push_back(p.second);
    out.push_back(summarize_values(n, std::move(v)));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kUninformative: return "uninformative";
    case Verdict::kFail: return "fail";
  }
  return "fail";
}

Verdict tail_verdict(double tail_ucl, double bound) {
  if (bound >= 1.0) return Verdict::kUninformative;
  return tail_ucl <= bound ? Verdict::kPass : Verdict::kFail;
}

namespace {

void check_t_grid(const std::vector<double>& t_grid) {
  for (double t : t_grid) {
    if (!(t > 0.0)) throw DomainError("t_grid values must be positive");
  }
}

BoundCheck tail_check(std::string family, const SummaryStats& stats, double t, double at,
                      double bound, double level, std::string note) {
  BoundCheck c;
  c.family = std::move(family);
  c.n = stats.n;
  c.t = t;
  c.count = stats.count;
  const std::size_t hits = stats.tail_count(at);
  c.tail = static_cast<double>(hits) / static_cast<double>(stats.count);
  c.tail_ucl = clopper_pearson_upper(hits, stats.count, level);
  c.bound = bound;
  c.verdict = tail_verdict(c.tail_ucl, c.bound);
  c.note = std::move(note);
  return c;
}

}  // namespace

std::vector<BoundCheck> check_transient_tail(const SummaryStats& stats, std::int64_t h_n,
                                     const std::vector<double>& t_grid, double level) {
  check_t_grid(t_grid);
  if (h_n < 1) throw DomainError("h(n) must be positive");
  std::vector<BoundCheck> out;
  for (double t : t_grid) {
    const double tn = t * stats.n;
    const double bound = 2.0 * std::exp(-tn * tn / (2.0 * static_cast<double>(h_n)));
    out.push_back(tail_check("transient-tail", stats, t, t, bound, level,
                             "centered at the empirical mean, h(n)=" + std::to_string(h_n)));
  }
  return out;
}

std::vector<BoundCheck> check_double_exp_tail(const SummaryStats& stats,
                                            const std::vector<double>& t_grid, double level) {
  check_t_grid(t_grid);
  std::vector<BoundCheck> out;
  for (double t : t_grid) {
    const double bound = std::exp(-std::exp(t * t * stats.n / 4.0) / 6.0);
    out.push_back(tail_check("double-exp-tail", stats, t, t + 2.0 * t * t, bound, level,
                             "deviation t+2t^2 around the empirical mean; the K n^-delta "
                             "offset is omitted"));
  }
  return out;
}

BootstrapCondition bootstrap_condition(int d, int n, int k, double t) {
  BootstrapCondition c;
  c.lhs = k * std::log(static_cast<double>(d)) + 2.0 * std::log(2.0);
  c.rhs = t * t * (n - k);
  c.slack = c.rhs - c.lhs;
  c.holds = c.slack >= 0.0;
  return c;
}

std::vector<BoundCheck> check_bootstrap(int d, int n, int k, double t,
                                        const std::vector<double>& values_n,
                                        double mean_n_minus_k, double level) {
  if (d < 2) throw DomainError("bootstrap check needs d >= 2");
  if (k < 2 || k % 2 != 0 || k > n) throw DomainError("bootstrap block k must be even in [2, n]");
  if (!(t > 0.0)) throw DomainError("bootstrap t must be positive");
  if (values_n.empty()) throw DomainError("bootstrap check needs samples");
  const BootstrapCondition cond = bootstrap_condition(d, n, k, t);
  if (!cond.holds) {
    throw DomainError("block condition k log d + 2 log 2 <= t^2 (n-k) fails: " +
                      std::to_string(cond.lhs) + " > " + std::to_string(cond.rhs) +
                      " (slack " + std::to_string(cond.slack) + ")");
  }
  const double bound = std::exp(-std::pow(static_cast<double>(d), k / 2.0) / 6.0);
  const double base = (n - k) * mean_n_minus_k;
  const double reach = (n - k) * t + k;
  std::size_t upper = 0, lower = 0;
  for (double v : values_n) {
    const double x = n * v - base;
    if (x >= reach) ++upper;
    if (x <= -reach) ++lower;
  }
  std::vector<BoundCheck> out;
  const std::string note = "condition slack " + std::to_string(cond.slack) +
                           "; E[V_{n-k}] from an independent batch";
  for (auto [name, hits] : {std::pair{"upper", upper}, std::pair{"lower", lower}}) {
    BoundCheck c;
    c.family = "bootstrap";
    c.n = n;
    c.t = t;
    c.count = values_n.size();
    c.tail = static_cast<double>(hits) / static_cast<double>(c.count);
    c.tail_ucl = clopper_pearson_upper(hits, c.count, level);
    c.bound = bound;
    c.verdict = tail_verdict(c.tail_ucl, c.bound);
    c.note = std::string(name) + " event, k=" + std::to_string(k) + "; " + note;
    out.push_back(c);
  }
  return out;
}

double tree_subadditivity_slack(int n, double psi_value, double epsilon) {
  return n * (psi_value + 2.0 * epsilon) + 1.0;
}

SubadditivityCheck check_subadditivity(const SummaryStats& sm, const SummaryStats& sn,
                                       const SummaryStats& smn, double slack_term, double z) {
  const int m = sm.n;
  const int n = sn.n;
  if (2 * m < n || m > 2 * n) {
    throw DomainError("subadditivity needs m in [n/2, 2n], got m=" + std::to_string(m) +
                      ", n=" + std::to_string(n));
  }
  if (smn.n != m + n) throw DomainError("third summary must be for horizon m+n");
  SubadditivityCheck c;
  c.m = m;
  c.n = n;
  c.count = std::min({sm.count, sn.count, smn.count});
  c.lhs = (m + n) * smn.mean;
  c.split = m * sm.mean + n * sn.mean;
  c.slack_term = slack_term;
  const double se2 = double(m + n) * (m + n) * smn.var / smn.count +
                     double(m) * m * sm.var / sm.count + double(n) * n * sn.var / sn.count;
  c.stat_slack = z * std::sqrt(se2);
  c.rhs = c.split - c.slack_term - c.stat_slack;
  c.margin = c.lhs - c.split;
  c.holds = c.lhs >= c.rhs;
  if (!c.holds) {
    c.verdict = Verdict::kFail;
  } else {
    c.verdict = c.rhs > 0.0 ? Verdict::kPass : Verdict::kUninformative;
  }
  return c;
}

// ---------------------------------------------------------------------------

namespace {

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double nx = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= nx;
  my /= nx;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

VinftyEstimate estimate_vinfty(const std::vector<SummaryStats>& summaries, double delta,
                               std::uint64_t seed, std::size_t resamples) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  std::vector<const SummaryStats*> sorted;
  for (const auto& s : summaries) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return a->n < b->n; });
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i]->n != sorted[i - 1]->n) ++distinct;
  }
  if (distinct < 3) throw DomainError("v_infinity fit needs at least 3 distinct n");

  std::vector<double> x, y;
  for (const SummaryStats* s : sorted) {
    x.push_back(std::pow(static_cast<double>(s->n), -delta));
    y.push_back(s->mean);
  }
  VinftyEstimate est;
  est.delta = delta;
  std::tie(est.estimate, est.slope) = fit_line(x, y);
  est.largest_n = sorted.back()->n;
  est.largest_n_mean = sorted.back()->mean;

  std::mt19937_64 rng(seed);
  std::vector<double> boot;
  boot.reserve(resamples);
  std::vector<double> yb(y.size());
  for (std::size_t b = 0; b < resamples; ++b) {
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const auto& vals = sorted[i]->values;
      if (vals.empty()) {
        yb[i] = y[i];
        continue;
      }
      std::uniform_int_distribution<std::size_t> pick(0, vals.size() - 1);
      double sum = 0.0;
      for (std::size_t j = 0; j < vals.size(); ++j) sum += vals[pick(rng)];
      yb[i] = sum / static_cast<double>(vals.size());
    }
    boot.push_back(fit_line(x, yb).first);
  }
  est.resamples = resamples;
  if (boot.empty()) {
    est.ci_low = est.ci_high = est.estimate;
  } else {
    est.ci_low = percentile(boot, 0.025);
    est.ci_high = percentile(boot, 0.975);
  }
  return est;
}

OscillationReport counterexample_oscillation(const ExperimentConfig& config, int n_branchy,
                                             int n_pathy, double margin) {
  if (!config.graph || config.graph->family() != "counterexample") {
    throw SpecError("oscillation check needs the counterexample tree family");
  }
  if (n_branchy < 1 || n_pathy < 1) throw DomainError("horizons must be >= 1");
  OscillationReport r;
  r.n_branchy = n_branchy;
  r.n_pathy = n_pathy;
  r.margin = margin;
  r.branchy = summarize_values(n_branchy, sample_values(config, n_branchy));
  r.pathy = summarize_values(n_pathy, sample_values(config, n_pathy));
  constexpr double kZ = 3.290526731491926;  // two-sided 99.9%
  r.half_width_branchy = kZ * std::sqrt(r.branchy.var / r.branchy.count);
  r.half_width_pathy = kZ * std::sqrt(r.pathy.var / r.pathy.count);
  r.oscillates = r.branchy.mean + margin < r.pathy.mean;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

}  // namespace

std::string samples_csv(const std::vector<SampleRecord>& records) {
  std::string out = "n,sample,seed,value,solve_ms\n";
  char buf[160];
  for (const SampleRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%d,%zu,%llu,%.17g,%.3f\n", r.n, r.index,
                  static_cast<unsigned long long>(r.seed), r.value, r.solve_ms);
    out += buf;
  }
  return out;
}

std::vector<SummaryRow> summary_rows(const std::vector<SummaryStats>& summaries) {
  std::vector<SummaryRow> rows;
  for (const auto& s : summaries) {
    SummaryRow r;
    r.n = s.n;
    r.count = s.count;
    r.mean = s.mean;
    r.var = s.var;
    r.family = "summary";
    rows.push_back(r);
  }
  return rows;
}

std::vector<SummaryRow> summary_rows(const std::vector<BoundCheck>& checks) {
  std::vector<SummaryRow> rows;
  for (const auto& c : checks) {
    SummaryRow r;
    r.n = c.n;
    r.count = c.count;
    r.t = c.t;
    r.tail = c.tail;
    r.tail_ucl = c.tail_ucl;
    r.bound = c.bound;
    r.verdict = to_string(c.verdict);
    r.family = c.family;
    rows.push_back(r);
  }
  return rows;
}

SummaryRow summary_row(const SubadditivityCheck& c) {
  SummaryRow r;
  r.n = c.m + c.n;
  r.count = c.count;
  r.tail = c.lhs;
  r.tail_ucl = c.rhs;
  r.bound = c.slack_term;
  r.verdict = to_string(c.verdict);
  r.family = "subadditivity";
  return r;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "n,count,mean,var,t,tail,tail_ucl,bound,verdict,family\n";
  for (const SummaryRow& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.count) + "," + fmt(r.mean) + "," +
           fmt(r.var) + "," + fmt(r.t) + "," + fmt(r.tail) + "," + fmt(r.tail_ucl) + "," +
           fmt(r.bound) + "," + r.verdict + "," + r.family + "\n";
  }
  return out;
}

}  // namespace dirgame
