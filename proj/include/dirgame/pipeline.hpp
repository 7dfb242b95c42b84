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

#ifndef DIRGAME_PIPELINE_HPP_
#define DIRGAME_PIPELINE_HPP_

#include <optional>
#include <string>

#include <json.hpp>

#include "dirgame/config.hpp"
#include "dirgame/errors.hpp"

namespace dirgame {

/// Reach-set sizes, degree statistics and the validation report for the
/// depth-`run.depth` region around the start.
struct InspectOutput {
  nlohmann::json report;
  bool ok = true;
};
InspectOutput run_inspect(const Config& config);

/// Solves the first horizon in `run.n` with the payoff field of `run.seed`.
struct SolveOutput {
  nlohmann::json solution;    // start, n, value, table_size, solver
  std::string strategies_csv;  // vertex,stage,choice (empty without strategies)
  double value = 0.0;
};
SolveOutput run_solve(const Config& config);

struct ExperimentOutput {
  std::string samples_csv;
  std::string summary_csv;
  nlohmann::json report;
  bool partial = false;
  std::optional<ErrorKind> error_kind;
};
ExperimentOutput run_experiment_pipeline(const Config& config);

nlohmann::json run_transience(const Config& config);

}  // namespace dirgame

#endif  // DIRGAME_PIPELINE_HPP_
