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

#ifndef DIRGAME_CONFIG_HPP_
#define DIRGAME_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirgame/generators.hpp"
#include "dirgame/montecarlo.hpp"
#include "dirgame/payoff.hpp"
#include "dirgame/value.hpp"

namespace dirgame {

inline constexpr const char* kVersion = "0.1.0";

struct PayoffSpec {
  PayoffDistribution distribution = PayoffDistribution::bernoulli(0.5);
  std::map<std::string, double> overrides;  // vertex text -> payoff
};

struct RunSection {
  std::vector<int> n{8};
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  int depth = 5;
  std::optional<std::string> start;
  std::size_t max_vertices = 100'000'000;
  SolverKind solver = SolverKind::kAuto;
  bool timing = false;
};

struct BootstrapSection {
  int n = 40;
  int k = 4;
  double t = 0.35;
};

struct SubadditivitySection {
  int m = 10;
  int n = 10;
  double extra_slack = 0.0;  // K' n^(1-delta) stand-in for non-tree games
};

struct OscillationSection {
  int n_branchy = 12;
  int n_pathy = 512;
  double margin = 0.02;
};

struct TransienceSection {
  int n_min = 10;
  int n_max = 200;
  double eps_scale = 2.0;
  std::optional<double> eps_exponent;
  std::string partition = "default";
};

struct BoundsSection {
  double delta = 0.25;
  std::vector<double> t_grid{0.2, 0.3, 0.4};
  double level = 0.999;
  bool transient_tail = true;
  bool double_exp_tail = false;
  bool vinfty = true;
  std::optional<BootstrapSection> bootstrap;
  std::optional<SubadditivitySection> subadditivity;
  std::optional<OscillationSection> oscillation;
  TransienceSection transience;
};

struct OutputSection {
  std::string dir = ".";
};

struct Config {
  nlohmann::json raw;
  GraphPtr graph;
  PayoffSpec payoffs;
  RunSection run;
  BoundsSection bounds;
  OutputSection output;

  VertexId start() const;
  PayoffField field(std::uint64_t seed) const;
  ExperimentConfig experiment() const;
};

/// Validates the whole document (unknown keys are errors) and builds the
/// graph. Throws SpecError or DomainError.
Config parse_config(const nlohmann::json& doc);

GraphPtr parse_graph(const nlohmann::json& graph);
PayoffSpec parse_payoffs(const nlohmann::json& payoffs);

}  // namespace dirgame

#endif  // DIRGAME_CONFIG_HPP_
