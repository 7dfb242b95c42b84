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

// Command-line front end. Links only the C interface in libdirgame.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirgame/dirgame.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::string> family;
  std::optional<int> d;
  std::optional<int> depth;
  std::vector<int> n;
  std::optional<long long> samples;
  std::optional<unsigned long long> seed;
  std::optional<int> threads;
  std::optional<double> delta;
  std::optional<std::string> out;
  std::optional<std::string> start;
  std::optional<std::string> solver;
  bool print_json = false;
};

int exit_code(dg_status s) {
  switch (s) {
    case DG_OK: return 0;
    case DG_ERR_STRUCTURAL: return 2;
    case DG_ERR_RESOURCE: return 3;
    default: return 1;
  }
}

struct CliError {
  dg_status status;
  std::string message;
};

void check(dg_status s) {
  if (s != DG_OK) throw CliError{s, dg_last_error()};
}

class OwnedString {
 public:
  OwnedString() = default;
  OwnedString(const OwnedString&) = delete;
  OwnedString& operator=(const OwnedString&) = delete;
  ~OwnedString() { dg_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? std::string(p_) : std::string(); }

 private:
  char* p_ = nullptr;
};

json load_config(const Options& o) {
  json doc = json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw CliError{DG_ERR_SPEC, "cannot open config '" + o.config_path + "'"};
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CliError{DG_ERR_SPEC, "config is not valid JSON: " + std::string(e.what())};
    }
    if (!doc.is_object()) throw CliError{DG_ERR_SPEC, "config must be a JSON object"};
  }
  auto section = [&](const char* key) -> json& {
    json& s = doc[key];
    if (s.is_null()) s = json::object();
    if (!s.is_object()) throw CliError{DG_ERR_SPEC, std::string(key) + " must be an object"};
    return s;
  };
  if (o.family) {
    json& g = section("graph");
    if (g.value("family", std::string()) != *o.family) g = json{{"family", *o.family}};
  }
  if (o.d) section("graph")["d"] = *o.d;
  if (o.depth) section("run")["depth"] = *o.depth;
  if (!o.n.empty()) section("run")["n"] = o.n;
  if (o.samples) section("run")["samples"] = *o.samples;
  if (o.seed) section("run")["seed"] = *o.seed;
  if (o.threads) section("run")["threads"] = *o.threads;
  if (const char* env = std::getenv("DIRGAME_THREADS"); env && *env) {
    char* end = nullptr;
    long t = std::strtol(env, &end, 10);
    if (*end != '\0' || t < 0) throw CliError{DG_ERR_SPEC, "DIRGAME_THREADS must be a non-negative integer"};
    section("run")["threads"] = t;
  }
  if (o.start) section("run")["start"] = *o.start;
  if (o.solver) section("run")["solver"] = *o.solver;
  if (o.delta) section("bounds")["delta"] = *o.delta;
  if (o.out) section("output")["dir"] = *o.out;
  return doc;
}

struct ConfigHandle {
  dg_config* h = nullptr;
  explicit ConfigHandle(const json& doc) { check(dg_config_parse(doc.dump().c_str(), &h)); }
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
  ~ConfigHandle() { dg_config_free(h); }
};

std::string output_dir(const ConfigHandle& c) {
  OwnedString s;
  check(dg_config_output_dir(c.h, s.out()));
  return s.str();
}

// temp file in the target directory, then rename over the destination
void write_atomic(const fs::path& path, const std::string& data) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw CliError{DG_ERR_RESOURCE, "cannot write " + path.string()};
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw CliError{DG_ERR_RESOURCE, "cannot rename onto " + path.string()};
  }
}

std::string fmt_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

int cmd_inspect(const Options& o) {
  ConfigHandle c(load_config(o));
  OwnedString s;
  int ok = 0;
  check(dg_inspect(c.h, s.out(), &ok));
  json r = json::parse(s.str());
  if (o.print_json) {
    std::cout << r.dump(2) << "\n";
  } else {
    std::string counts;
    for (const auto& x : r["level_counts"]) counts += (counts.empty() ? "" : ",") + x.dump();
    std::cout << "family: " << r["family"].get<std::string>() << "\n"
              << "start: " << r["start"].get<std::string>() << "\n"
              << "level counts: " << counts << "\n"
              << "total: " << r["total"].dump() << "\n"
              << "out-degree min/max/mean: " << r["degree"]["min"].dump() << "/"
              << r["degree"]["max"].dump() << "/" << fmt_value(r["degree"]["mean"].get<double>())
              << "\n";
    const json& v = r["validation"];
    std::cout << "validation: " << (ok ? "ok" : "violations") << "\n";
    for (const auto& x : v["violations"]) {
      std::cout << "  " << x["kind"].get<std::string>() << " at " << x["vertex"].get<std::string>()
                << ": " << x["message"].get<std::string>() << "\n";
    }
  }
  return ok ? 0 : 2;
}

int cmd_solve(const Options& o) {
  ConfigHandle c(load_config(o));
  OwnedString sol, strat;
  double value = 0.0;
  check(dg_solve(c.h, sol.out(), strat.out(), &value));
  const fs::path dir = output_dir(c);
  write_atomic(dir / "solution.json", sol.str() + "\n");
  if (!strat.str().empty()) write_atomic(dir / "strategies.csv", strat.str());
  std::cout << fmt_value(value) << "\n";
  return 0;
}

int cmd_experiment(const Options& o) {
  ConfigHandle c(load_config(o));
  dg_experiment* e = nullptr;
  check(dg_experiment_run(c.h, &e));
  struct Free {
    dg_experiment* e;
    ~Free() { dg_experiment_free(e); }
  } guard{e};
  OwnedString samples, summary, report;
  check(dg_experiment_samples_csv(e, samples.out()));
  check(dg_experiment_summary_csv(e, summary.out()));
  check(dg_experiment_report_json(e, report.out()));
  const fs::path dir = output_dir(c);
  write_atomic(dir / "samples.csv", samples.str());
  write_atomic(dir / "summary.csv", summary.str());
  write_atomic(dir / "report.json", report.str() + "\n");
  if (dg_experiment_partial(e)) {
    const dg_status st = dg_experiment_status(e);
    json r = json::parse(report.str());
    std::cerr << "dirgame: " << dg_status_name(st) << " error: " << r["error"].get<std::string>()
              << " (partial results written)\n";
    return exit_code(st);
  }
  std::cout << summary.str();
  return 0;
}

int cmd_transience(const Options& o) {
  ConfigHandle c(load_config(o));
  OwnedString s;
  check(dg_transience(c.h, s.out()));
  write_atomic(fs::path(output_dir(c)) / "transience.json", s.str() + "\n");
  json r = json::parse(s.str());
  std::cout << "verdict: " << r["verdict"].get<std::string>() << "\n";
  if (!r["note"].get<std::string>().empty()) std::cout << "note: " << r["note"].get<std::string>() << "\n";
  return 0;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("-c,--config", o.config_path, "JSON config file");
  sub->add_option("--family", o.family, "graph family (replaces graph block if it differs)");
  sub->add_option("--d", o.d, "tree arity");
  sub->add_option("--depth", o.depth, "inspection depth");
  sub->add_option("--n", o.n, "horizon(s)")->delimiter(',');
  sub->add_option("--samples", o.samples, "samples per horizon");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--threads", o.threads, "worker threads, 0 = hardware");
  sub->add_option("--delta", o.delta, "delta in (0, 1/2)");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--start", o.start, "start vertex");
  sub->add_option("--solver", o.solver, "auto, dp or search");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dirgame: zero-sum games on random-payoff directed graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dg_version()));
  Options o;
  CLI::App* inspect = app.add_subcommand("inspect", "reach-set sizes, degrees, validation");
  CLI::App* solve = app.add_subcommand("solve", "solve V_n for one payoff sample");
  CLI::App* experiment = app.add_subcommand("experiment", "Monte Carlo run with bound checks");
  CLI::App* transience = app.add_subcommand("transience", "delta-transience report");
  for (CLI::App* sub : {inspect, solve, experiment, transience}) add_common(sub, o);
  inspect->add_flag("--json", o.print_json, "print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*inspect) return cmd_inspect(o);
    if (*solve) return cmd_solve(o);
    if (*experiment) return cmd_experiment(o);
    if (*transience) return cmd_transience(o);
  } catch (const CliError& e) {
    std::cerr << "dirgame: " << dg_status_name(e.status) << " error: " << e.message << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "dirgame: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
