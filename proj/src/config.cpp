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

#include "dirgame/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>

#include "dirgame/errors.hpp"

namespace dirgame {
namespace {

using json = nlohmann::json;

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SpecError(path + " must be an object");
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  require_object(j, path);
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw SpecError("unknown key '" + path + "." + key + "'");
    }
  }
}

std::string where(const std::string& path, const char* key) { return path + "." + key; }

std::int64_t as_int(const json& v, const std::string& w) {
  if (!v.is_number_integer()) throw SpecError(w + " must be an integer");
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw SpecError(w + " is out of range");
  }
  return v.get<std::int64_t>();
}

int as_small_int(const json& v, const std::string& w) {
  const std::int64_t x = as_int(v, w);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw SpecError(w + " is out of range");
  }
  return static_cast<int>(x);
}

double as_double(const json& v, const std::string& w) {
  if (!v.is_number()) throw SpecError(w + " must be a number");
  return v.get<double>();
}

bool as_bool(const json& v, const std::string& w) {
  if (!v.is_boolean()) throw SpecError(w + " must be true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& w) {
  if (!v.is_string()) throw SpecError(w + " must be a string");
  return v.get<std::string>();
}

IntVec as_int_vec(const json& v, const std::string& w) {
  if (!v.is_array()) throw SpecError(w + " must be an array of integers");
  IntVec out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], w + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<IntVec> as_int_vecs(const json& v, const std::string& w) {
  if (!v.is_array()) throw SpecError(w + " must be an array of integer arrays");
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int_vec(v[i], w + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> as_doubles(const json& v, const std::string& w) {
  if (!v.is_array()) throw SpecError(w + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], w + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> as_strings(const json& v, const std::string& w) {
  if (!v.is_array()) throw SpecError(w + " must be an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], w + "[" + std::to_string(i) + "]"));
  return out;
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& need(const json& j, const std::string& path, const char* key) {
  const json* v = find(j, key);
  if (!v) throw SpecError("missing key '" + where(path, key) + "'");
  return *v;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("'" + path + "' is not valid JSON: " + e.what());
  }
}

GraphPtr parse_tiling(const json& g, const std::string& path) {
  check_keys(g, path, {"family", "periods", "vertices", "edges", "direction",
                       "transitivity_radius", "file"});
  if (const json* f = find(g, "file")) {
    json merged = load_file(as_string(*f, where(path, "file")));
    require_object(merged, as_string(*f, where(path, "file")));
    for (const auto& [k, v] : g.items()) {
      if (k != "file") merged[k] = v;
    }
    return parse_tiling(merged, path);
  }
  TilingSpec spec;
  const auto periods = as_int_vecs(need(g, path, "periods"), where(path, "periods"));
  if (periods.size() != 2) throw SpecError(where(path, "periods") + " must hold two vectors");
  spec.period1 = periods[0];
  spec.period2 = periods[1];
  spec.vertices = as_int_vecs(need(g, path, "vertices"), where(path, "vertices"));
  for (const IntVec& e : as_int_vecs(need(g, path, "edges"), where(path, "edges"))) {
    if (e.size() != 3) throw SpecError(where(path, "edges") + " entries are [from, dx, dy]");
    spec.edges.push_back({static_cast<int>(e[0]), e[1], e[2]});
  }
  if (const json* d = find(g, "direction")) spec.direction = as_int_vec(*d, where(path, "direction"));
  if (const json* m = find(g, "transitivity_radius")) {
    spec.transitivity_radius = as_small_int(*m, where(path, "transitivity_radius"));
  }
  return make_tiling(spec);
}

}  // namespace

GraphPtr parse_graph(const json& g) {
  const std::string path = "graph";
  require_object(g, path);
  const std::string family = as_string(need(g, path, "family"), where(path, "family"));
  if (family == "dary") {
    check_keys(g, path, {"family", "d"});
    DaryTreeSpec spec;
    if (const json* d = find(g, "d")) spec.d = as_small_int(*d, where(path, "d"));
    return make_dary_tree(spec);
  }
  if (family == "line") {
    check_keys(g, path, {"family"});
    return make_line();
  }
  if (family == "grid") {
    check_keys(g, path, {"family"});
    return make_grid();
  }
  if (family == "lattice") {
    check_keys(g, path, {"family", "offsets", "direction", "periods", "mask", "transitivity_radius"});
    OrientedLatticeSpec spec;
    spec.offsets = as_int_vecs(need(g, path, "offsets"), where(path, "offsets"));
    spec.direction = as_int_vec(need(g, path, "direction"), where(path, "direction"));
    if (const json* p = find(g, "periods")) spec.periods = as_int_vec(*p, where(path, "periods"));
    if (const json* m = find(g, "mask")) spec.mask = as_int_vecs(*m, where(path, "mask"));
    if (const json* m = find(g, "transitivity_radius")) {
      spec.transitivity_radius = as_small_int(*m, where(path, "transitivity_radius"));
    }
    return make_oriented_lattice(spec);
  }
  if (family == "tiling") return parse_tiling(g, path);
  if (family == "hchain") {
    check_keys(g, path, {"family", "vertices", "edges"});
    HChainSpec spec;
    spec.vertices = as_strings(need(g, path, "vertices"), where(path, "vertices"));
    const json& edges = need(g, path, "edges");
    if (!edges.is_array()) throw SpecError(where(path, "edges") + " must be an array of pairs");
    for (const json& e : edges) {
      const auto pair = as_strings(e, where(path, "edges"));
      if (pair.size() != 2) throw SpecError(where(path, "edges") + " entries must be pairs");
      spec.edges.emplace_back(pair[0], pair[1]);
    }
    return make_h_chain(spec);
  }
  if (family == "controlled") {
    check_keys(g, path, {"family", "levels", "rule", "step", "path_mode"});
    ControlledTreeSpec spec;
    if (const json* l = find(g, "levels")) {
      if (find(g, "rule")) throw SpecError("graph: give either levels or rule, not both");
      spec.levels.rule = LevelSet::Rule::kList;
      spec.levels.levels = as_int_vec(*l, where(path, "levels"));
    } else {
      const std::string rule =
          find(g, "rule") ? as_string(*find(g, "rule"), where(path, "rule")) : "all";
      if (rule == "all") {
        spec.levels.rule = LevelSet::Rule::kAll;
      } else if (rule == "every") {
        spec.levels.rule = LevelSet::Rule::kEvery;
      } else if (rule == "squares") {
        spec.levels.rule = LevelSet::Rule::kSquares;
      } else {
        throw SpecError(where(path, "rule") + " must be all, every or squares");
      }
    }
    if (const json* s = find(g, "step")) spec.levels.step = as_int(*s, where(path, "step"));
    if (const json* p = find(g, "path_mode")) spec.path_mode = as_bool(*p, where(path, "path_mode"));
    return make_controlled_tree(spec);
  }
  if (family == "counterexample") {
    check_keys(g, path, {"family", "intervals", "schedule"});
    if (const json* iv = find(g, "intervals")) {
      CounterexampleSpec spec;
      for (const IntVec& p : as_int_vecs(*iv, where(path, "intervals"))) {
        if (p.size() != 2) throw SpecError(where(path, "intervals") + " entries are [a, b]");
        spec.intervals.emplace_back(p[0], p[1]);
      }
      return make_counterexample_tree(spec);
    }
    if (const json* s = find(g, "schedule")) {
      if (as_string(*s, where(path, "schedule")) != "default") {
        throw SpecError(where(path, "schedule") + " must be \"default\"");
      }
    }
    return make_counterexample_tree(CounterexampleSpec::default_schedule());
  }
  if (family == "explicit") {
    check_keys(g, path, {"family", "nodes", "edges", "initial", "max_out_degree"});
    ExplicitGraphSpec spec;
    spec.nodes = as_strings(need(g, path, "nodes"), where(path, "nodes"));
    const json& edges = need(g, path, "edges");
    require_object(edges, where(path, "edges"));
    for (const std::string& node : spec.nodes) {
      if (const json* e = find(edges, node.c_str())) {
        spec.edges.emplace_back(node, as_strings(*e, where(path, "edges") + "." + node));
      }
    }
    for (const auto& [k, v] : edges.items()) {
      (void)v;
      if (std::find(spec.nodes.begin(), spec.nodes.end(), k) == spec.nodes.end()) {
        throw SpecError(where(path, "edges") + " names unknown node '" + k + "'");
      }
    }
    if (const json* i = find(g, "initial")) spec.initial = as_string(*i, where(path, "initial"));
    if (const json* m = find(g, "max_out_degree")) {
      spec.max_out_degree = as_small_int(*m, where(path, "max_out_degree"));
    }
    return make_explicit_graph(spec);
  }
  throw SpecError("unknown graph family '" + family + "'");
}

PayoffSpec parse_payoffs(const json& p) {
  const std::string path = "payoffs";
  require_object(p, path);
  PayoffSpec spec;
  const std::string dist =
      find(p, "distribution") ? as_string(*find(p, "distribution"), where(path, "distribution"))
                              : "bernoulli";
  auto read_table = [&](const json& t, const std::string& w) {
    require_object(t, w);
    for (const auto& [k, v] : t.items()) spec.overrides[k] = as_double(v, w + "." + k);
  };
  if (dist == "bernoulli") {
    check_keys(p, path, {"distribution", "p", "overrides"});
    const double prob = find(p, "p") ? as_double(*find(p, "p"), where(path, "p")) : 0.5;
    spec.distribution = PayoffDistribution::bernoulli(prob);
  } else if (dist == "uniform") {
    check_keys(p, path, {"distribution", "overrides"});
    spec.distribution = PayoffDistribution::uniform();
  } else if (dist == "discrete") {
    check_keys(p, path, {"distribution", "values", "weights", "overrides"});
    std::vector<double> weights;
    if (const json* w = find(p, "weights")) weights = as_doubles(*w, where(path, "weights"));
    spec.distribution = PayoffDistribution::discrete(
        as_doubles(need(p, path, "values"), where(path, "values")), std::move(weights));
  } else if (dist == "constant") {
    check_keys(p, path, {"distribution", "value", "overrides"});
    spec.distribution =
        PayoffDistribution::constant(as_double(need(p, path, "value"), where(path, "value")));
  } else if (dist == "explicit") {
    check_keys(p, path, {"distribution", "values", "default"});
    const double def = find(p, "default") ? as_double(*find(p, "default"), where(path, "default")) : 0.0;
    spec.distribution = PayoffDistribution::constant(def);
    read_table(need(p, path, "values"), where(path, "values"));
    return spec;
  } else {
    throw SpecError("unknown payoff distribution '" + dist + "'");
  }
  if (const json* o = find(p, "overrides")) read_table(*o, where(path, "overrides"));
  return spec;
}

namespace {

RunSection parse_run(const json& r) {
  const std::string path = "run";
  check_keys(r, path, {"n", "samples", "seed", "threads", "depth", "start", "max_vertices",
                       "solver", "timing"});
  RunSection run;
  if (const json* n = find(r, "n")) {
    run.n.clear();
    if (n->is_array()) {
      for (std::size_t i = 0; i < n->size(); ++i) {
        run.n.push_back(as_small_int((*n)[i], "run.n[" + std::to_string(i) + "]"));
      }
    } else {
      run.n.push_back(as_small_int(*n, "run.n"));
    }
    if (run.n.empty()) throw SpecError("run.n must not be empty");
  }
  if (const json* s = find(r, "samples")) {
    const std::int64_t x = as_int(*s, "run.samples");
    if (x < 1) throw SpecError("run.samples must be >= 1");
    run.samples = static_cast<std::size_t>(x);
  }
  if (const json* s = find(r, "seed")) {
    if (!s->is_number_integer()) throw SpecError("run.seed must be an integer");
    run.seed = s->is_number_unsigned() ? s->get<std::uint64_t>()
                                       : static_cast<std::uint64_t>(s->get<std::int64_t>());
  }
  if (const json* t = find(r, "threads")) {
    run.threads = as_small_int(*t, "run.threads");
    if (run.threads < 0) throw SpecError("run.threads must be >= 0 (0 = all cores)");
  }
  if (const json* d = find(r, "depth")) {
    run.depth = as_small_int(*d, "run.depth");
    if (run.depth < 0) throw SpecError("run.depth must be >= 0");
  }
  if (const json* s = find(r, "start")) run.start = as_string(*s, "run.start");
  if (const json* m = find(r, "max_vertices")) {
    const std::int64_t x = as_int(*m, "run.max_vertices");
    if (x < 1) throw SpecError("run.max_vertices must be >= 1");
    run.max_vertices = static_cast<std::size_t>(x);
  }
  if (const json* s = find(r, "solver")) run.solver = parse_solver_kind(as_string(*s, "run.solver"));
  if (const json* t = find(r, "timing")) run.timing = as_bool(*t, "run.timing");
  return run;
}

BoundsSection parse_bounds(const json& b) {
  const std::string path = "bounds";
  check_keys(b, path, {"delta", "t_grid", "level", "transient_tail", "double_exp_tail", "vinfty", "bootstrap",
                       "subadditivity", "oscillation", "transience"});
  BoundsSection out;
  if (const json* d = find(b, "delta")) out.delta = as_double(*d, "bounds.delta");
  if (!(out.delta > 0.0 && out.delta < 0.5)) {
    throw DomainError("bounds.delta must lie in (0, 1/2), got " + std::to_string(out.delta));
  }
  if (const json* t = find(b, "t_grid")) {
    out.t_grid = as_doubles(*t, "bounds.t_grid");
    for (double x : out.t_grid) {
      if (!(x > 0.0)) throw SpecError("bounds.t_grid values must be positive");
    }
  }
  if (const json* l = find(b, "level")) {
    out.level = as_double(*l, "bounds.level");
    if (!(out.level > 0.0 && out.level < 1.0)) throw SpecError("bounds.level must lie in (0,1)");
  }
  if (const json* x = find(b, "transient_tail")) out.transient_tail = as_bool(*x, "bounds.transient_tail");
  if (const json* x = find(b, "double_exp_tail")) out.double_exp_tail = as_bool(*x, "bounds.double_exp_tail");
  if (const json* x = find(b, "vinfty")) out.vinfty = as_bool(*x, "bounds.vinfty");
  if (const json* x = find(b, "bootstrap")) {
    check_keys(*x, "bounds.bootstrap", {"n", "k", "t"});
    BootstrapSection s;
    if (const json* v = find(*x, "n")) s.n = as_small_int(*v, "bounds.bootstrap.n");
    if (const json* v = find(*x, "k")) s.k = as_small_int(*v, "bounds.bootstrap.k");
    if (const json* v = find(*x, "t")) s.t = as_double(*v, "bounds.bootstrap.t");
    out.bootstrap = s;
  }
  if (const json* x = find(b, "subadditivity")) {
    check_keys(*x, "bounds.subadditivity", {"m", "n", "extra_slack"});
    SubadditivitySection s;
    if (const json* v = find(*x, "m")) s.m = as_small_int(*v, "bounds.subadditivity.m");
    if (const json* v = find(*x, "n")) s.n = as_small_int(*v, "bounds.subadditivity.n");
    if (const json* v = find(*x, "extra_slack")) {
      s.extra_slack = as_double(*v, "bounds.subadditivity.extra_slack");
    }
    out.subadditivity = s;
  }
  if (const json* x = find(b, "oscillation")) {
    check_keys(*x, "bounds.oscillation", {"n_branchy", "n_pathy", "margin"});
    OscillationSection s;
    if (const json* v = find(*x, "n_branchy")) s.n_branchy = as_small_int(*v, "bounds.oscillation.n_branchy");
    if (const json* v = find(*x, "n_pathy")) s.n_pathy = as_small_int(*v, "bounds.oscillation.n_pathy");
    if (const json* v = find(*x, "margin")) s.margin = as_double(*v, "bounds.oscillation.margin");
    out.oscillation = s;
  }
  if (const json* x = find(b, "transience")) {
    check_keys(*x, "bounds.transience", {"n_min", "n_max", "eps_scale", "eps_exponent", "partition"});
    TransienceSection& s = out.transience;
    if (const json* v = find(*x, "n_min")) s.n_min = as_small_int(*v, "bounds.transience.n_min");
    if (const json* v = find(*x, "n_max")) s.n_max = as_small_int(*v, "bounds.transience.n_max");
    if (const json* v = find(*x, "eps_scale")) s.eps_scale = as_double(*v, "bounds.transience.eps_scale");
    if (const json* v = find(*x, "eps_exponent")) {
      s.eps_exponent = as_double(*v, "bounds.transience.eps_exponent");
    }
    if (const json* v = find(*x, "partition")) s.partition = as_string(*v, "bounds.transience.partition");
    if (s.n_min < 1 || s.n_max < s.n_min) {
      throw SpecError("bounds.transience needs 1 <= n_min <= n_max");
    }
  }
  return out;
}

}  // namespace

Config parse_config(const json& doc) {
  check_keys(doc, "config", {"graph", "payoffs", "run", "bounds", "output"});
  Config c;
  c.raw = doc;
  c.graph = parse_graph(need(doc, "config", "graph"));
  if (const json* p = find(doc, "payoffs")) c.payoffs = parse_payoffs(*p);
  if (const json* r = find(doc, "run")) c.run = parse_run(*r);
  if (const json* b = find(doc, "bounds")) c.bounds = parse_bounds(*b);
  if (const json* o = find(doc, "output")) {
    check_keys(*o, "output", {"dir"});
    if (const json* d = find(*o, "dir")) c.output.dir = as_string(*d, "output.dir");
  }
  c.start();  // validate the start key early
  for (const auto& [k, v] : c.payoffs.overrides) {
    (void)v;
    c.graph->parse_vertex(k);
  }
  return c;
}

VertexId Config::start() const {
  if (run.start) return graph->parse_vertex(*run.start);
  return graph->initial();
}

PayoffField Config::field(std::uint64_t seed) const {
  PayoffField f(seed, payoffs.distribution);
  for (const auto& [k, v] : payoffs.overrides) f.set_override(graph->parse_vertex(k), v);
  return f;
}

ExperimentConfig Config::experiment() const {
  ExperimentConfig e;
  e.graph = graph;
  e.start = start();
  e.distribution = payoffs.distribution;
  for (const auto& [k, v] : payoffs.overrides) e.overrides.emplace_back(graph->parse_vertex(k), v);
  e.n_list = run.n;
  e.samples = run.samples;
  e.master_seed = run.seed;
  e.threads = run.threads;
  e.solver = run.solver;
  e.max_states = run.max_vertices;
  e.timing = run.timing;
  return e;
}

}  // namespace dirgame
