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

#include "dirgame/dirgame.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "dirgame/config.hpp"
#include "dirgame/pipeline.hpp"

struct dg_config {
  dirgame::Config config;
};

struct dg_experiment {
  dirgame::ExperimentOutput out;
};

namespace {

thread_local std::string g_last_error;

dg_status status_of(dirgame::ErrorKind kind) {
  switch (kind) {
    case dirgame::ErrorKind::kSpec: return DG_ERR_SPEC;
    case dirgame::ErrorKind::kDomain: return DG_ERR_DOMAIN;
    case dirgame::ErrorKind::kStructural: return DG_ERR_STRUCTURAL;
    case dirgame::ErrorKind::kResource: return DG_ERR_RESOURCE;
  }
  return DG_ERR_INTERNAL;
}

dg_status fail(dg_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
dg_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return DG_OK;
  } catch (const dirgame::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(DG_ERR_SPEC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DG_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(DG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DG_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* dg_version(void) { return dirgame::kVersion; }

const char* dg_last_error(void) { return g_last_error.c_str(); }

const char* dg_status_name(dg_status status) {
  switch (status) {
    case DG_OK: return "ok";
    case DG_ERR_SPEC: return "spec";
    case DG_ERR_DOMAIN: return "domain";
    case DG_ERR_STRUCTURAL: return "structural";
    case DG_ERR_RESOURCE: return "resource";
    case DG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void dg_string_free(char* s) { std::free(s); }

dg_status dg_config_parse(const char* json_text, dg_config** out) {
  if (!json_text || !out) return fail(DG_ERR_SPEC, "null argument");
  *out = nullptr;
  return guard([&] {
    auto doc = nlohmann::json::parse(json_text);
    auto* h = new dg_config{dirgame::parse_config(doc)};
    *out = h;
  });
}

void dg_config_free(dg_config* config) { delete config; }

dg_status dg_config_threads(const dg_config* config, int* out) {
  if (!config || !out) return fail(DG_ERR_SPEC, "null argument");
  *out = config->config.run.threads;
  return DG_OK;
}

dg_status dg_config_output_dir(const dg_config* config, char** out) {
  if (!config || !out) return fail(DG_ERR_SPEC, "null argument");
  return guard([&] { *out = dup(config->config.output.dir); });
}

dg_status dg_inspect(const dg_config* config, char** out_json, int* out_ok) {
  if (!config || !out_json) return fail(DG_ERR_SPEC, "null argument");
  return guard([&] {
    auto r = dirgame::run_inspect(config->config);
    *out_json = dup(r.report.dump(2));
    if (out_ok) *out_ok = r.ok ? 1 : 0;
  });
}

dg_status dg_solve(const dg_config* config, char** out_json, char** out_strategies_csv,
                   double* out_value) {
  if (!config || !out_json) return fail(DG_ERR_SPEC, "null argument");
  return guard([&] {
    auto r = dirgame::run_solve(config->config);
    std::string j = r.solution.dump(2);
    char* a = dup(j);
    if (out_strategies_csv) {
      try {
        *out_strategies_csv = dup(r.strategies_csv);
      } catch (...) {
        std::free(a);
        throw;
      }
    }
    *out_json = a;
    if (out_value) *out_value = r.value;
  });
}

dg_status dg_experiment_run(const dg_config* config, dg_experiment** out) {
  if (!config || !out) return fail(DG_ERR_SPEC, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new dg_experiment{dirgame::run_experiment_pipeline(config->config)};
    if ((*out)->out.partial) {
      g_last_error = (*out)->out.report.value("error", std::string());
    }
  });
}

void dg_experiment_free(dg_experiment* exp) { delete exp; }

int dg_experiment_partial(const dg_experiment* exp) { return exp && exp->out.partial ? 1 : 0; }

dg_status dg_experiment_status(const dg_experiment* exp) {
  if (!exp) return DG_ERR_SPEC;
  if (!exp->out.error_kind) return DG_OK;
  return status_of(*exp->out.error_kind);
}

dg_status dg_experiment_samples_csv(const dg_experiment* exp, char** out) {
  if (!exp || !out) return fail(DG_ERR_SPEC, "null argument");
  return guard([&] { *out = dup(exp->out.samples_csv); });
}

dg_status dg_experiment_summary_csv(const dg_experiment* exp, char** out) {
  if (!exp || !out) return fail(DG_ERR_SPEC, "null argument");
  return guard([&] { *out = dup(exp->out.summary_csv); });
}

dg_status dg_experiment_report_json(const dg_experiment* exp, char** out) {
  if (!exp || !out) return fail(DG_ERR_SPEC, "null argument");
  return guard([&] { *out = dup(exp->out.report.dump(2)); });
}

dg_status dg_transience(const dg_config* config, char** out_json) {
  if (!config || !out_json) return fail(DG_ERR_SPEC, "null argument");
  return guard([&] { *out_json = dup(dirgame::run_transience(config->config).dump(2)); });
}

}  // extern "C"
