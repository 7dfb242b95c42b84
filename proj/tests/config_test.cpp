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

#include <filesystem>
#include <fstream>

#include "dirgame/config.hpp"
#include "dirgame/errors.hpp"
#include "dirgame/pipeline.hpp"

using namespace dirgame;
using nlohmann::json;

namespace {

json load(const std::filesystem::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

ErrorKind kind_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("config was accepted");
  return ErrorKind::kSpec;
}

}  // namespace

TEST_CASE("every shipped example parses") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(DIRGAME_DOCS_DIR "/examples")) {
    CAPTURE(entry.path().string());
    Config c = parse_config(load(entry.path()));
    CHECK(c.graph != nullptr);
    ++count;
  }
  CHECK(count >= 9);
}

TEST_CASE("tiling fixture loads from file") {
  json doc = {{"graph", {{"family", "tiling"}, {"file", DIRGAME_DATA_DIR "/tiling_two_squares.json"}}}};
  Config c = parse_config(doc);
  CHECK(c.graph->family() == "tiling");
  CHECK(c.graph->transitivity_radius() == 6);
  CHECK(validate_region(*c.graph, c.start(), 12).ok);
}

TEST_CASE("schema errors") {
  CHECK(kind_of(json::object()) == ErrorKind::kSpec);
  CHECK(kind_of({{"graph", {{"family", "dary"}}}, {"extra", 1}}) == ErrorKind::kSpec);
  CHECK(kind_of({{"graph", {{"family", "dary"}, {"k", 2}}}}) == ErrorKind::kSpec);
  CHECK(kind_of({{"graph", {{"family", "nope"}}}}) == ErrorKind::kSpec);
  CHECK(kind_of({{"graph", {{"family", "dary"}}}, {"run", {{"samples", 0}}}}) == ErrorKind::kSpec);
  CHECK(kind_of({{"graph", {{"family", "dary"}}}, {"run", {{"n", "8"}}}}) == ErrorKind::kSpec);
  CHECK(kind_of({{"graph", {{"family", "dary"}}}, {"bounds", {{"delta", 0.6}}}}) ==
        ErrorKind::kDomain);
  CHECK(kind_of({{"graph", {{"family", "dary"}}}, {"payoffs", {{"distribution", "bernoulli"},
                                                               {"p", 2}}}}) != ErrorKind::kStructural);
  try {
    parse_config({{"graph", {{"family", "dary"}}}, {"run", {{"bogus", 1}}}});
    FAIL("accepted");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()) == "unknown key 'run.bogus'");
  }
}

TEST_CASE("payoff overrides and explicit payoffs") {
  Config c = parse_config(load(DIRGAME_DOCS_DIR "/examples/diamond.json"));
  auto f = c.field(1);
  CHECK(f(c.graph->parse_vertex("b")) == 0.7);
  auto sol = run_solve(c);
  CHECK(sol.value == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(sol.strategies_csv.rfind("vertex,stage,choice\nz,0,1\n", 0) == 0);
  CHECK(sol.solution["solver"] == "dp");

  json bad = load(DIRGAME_DOCS_DIR "/examples/diamond.json");
  bad["payoffs"]["values"]["q"] = 0.5;
  CHECK(kind_of(bad) == ErrorKind::kSpec);
}

TEST_CASE("pipeline outputs") {
  json doc = {{"graph", {{"family", "dary"}, {"d", 2}}},
              {"run", {{"n", {8, 16}}, {"samples", 100}, {"seed", 7}}}};
  Config c = parse_config(doc);
  auto a = run_experiment_pipeline(c);
  auto b = run_experiment_pipeline(c);
  CHECK(a.samples_csv == b.samples_csv);
  CHECK(a.summary_csv == b.summary_csv);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report["summaries"].size() == 2);
  CHECK(a.report["checks"].size() == 6);
  CHECK_FALSE(a.partial);

  auto ins = run_inspect(parse_config({{"graph", {{"family", "line"}}}, {"run", {{"depth", 5}}}}));
  CHECK(ins.ok);
  CHECK(ins.report["level_counts"] == json({1, 1, 1, 1, 1, 1}));

  auto tr = run_transience(parse_config({{"graph", {{"family", "line"}}}}));
  CHECK(tr["verdict"] == "accepted");
  auto tt = run_transience(parse_config(
      {{"graph", {{"family", "dary"}}}, {"bounds", {{"transience", {{"n_max", 60}}}}}}));
  CHECK(tt["verdict"] == "rejected");
}

TEST_CASE("solve needs n >= 1") {
  Config c = parse_config({{"graph", {{"family", "dary"}}}, {"run", {{"n", 0}}}});
  CHECK_THROWS_WITH_AS(run_solve(c), "n must be >= 1", DomainError);
}
