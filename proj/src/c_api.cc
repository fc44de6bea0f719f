// Copyright 2026 The streamweak Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streamweak/streamweak.h"

#include <cstring>
#include <exception>
#include <iostream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streamweak/baselines.h"
#include "streamweak/datasets.h"
#include "streamweak/error.h"
#include "streamweak/extern_oracle.h"
#include "streamweak/gamma.h"
#include "streamweak/harness.h"
#include "streamweak/objectives.h"
#include "streamweak/streak.h"

namespace sw = streamweak;

struct sw_oracle {
  std::unique_ptr<sw::Valuation> valuation;
  std::optional<sw::HardInstanceParams> hard;
  std::string name;
};

struct sw_result {
  sw::RunResult run;
  std::vector<std::uint32_t> sorted;
};

struct sw_gamma {
  sw::GammaEstimate estimate;
  std::vector<std::uint32_t> l;
  std::vector<std::uint32_t> s;
};

struct sw_table {
  sw::ExperimentTable table;
};

namespace {

thread_local std::string g_last_error;

sw_status ToStatus(sw::ErrorCode code) {
  switch (code) {
    case sw::ErrorCode::kParameter:
      return SW_ERR_PARAMETER;
    case sw::ErrorCode::kPrecondition:
      return SW_ERR_PRECONDITION;
    case sw::ErrorCode::kStream:
      return SW_ERR_STREAM;
    case sw::ErrorCode::kCapacity:
      return SW_ERR_CAPACITY;
    case sw::ErrorCode::kOracle:
      return SW_ERR_ORACLE;
    case sw::ErrorCode::kConnection:
      return SW_ERR_CONNECTION;
    case sw::ErrorCode::kIo:
      return SW_ERR_IO;
  }
  return SW_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <typename Fn>
sw_status Guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SW_OK;
  } catch (const sw::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SW_ERR_INTERNAL;
  }
}

void RequireOut(const void* out) {
  if (out == nullptr) throw sw::ParameterError("output pointer is NULL");
}

sw_oracle* Wrap(std::unique_ptr<sw::Valuation> v, std::string name) {
  auto* o = new sw_oracle;
  o->valuation = std::move(v);
  o->name = std::move(name);
  return o;
}

std::vector<sw::ElementId> Ids(const std::uint32_t* ids, std::size_t len) {
  if (len > 0 && ids == nullptr) throw sw::ParameterError("ids is NULL");
  return sw::ToElementIds(std::span<const std::uint32_t>(ids, len));
}

void CopyIds(std::span<const sw::ElementId> ids, std::uint32_t* out) {
  for (std::size_t i = 0; i < ids.size(); ++i) out[i] = ids[i].value;
}

}  // namespace

extern "C" {

const char* sw_version(void) { return "0.1.0"; }

const char* sw_status_name(sw_status status) {
  switch (status) {
    case SW_OK:
      return "ok";
    case SW_ERR_PARAMETER:
      return "parameter error";
    case SW_ERR_PRECONDITION:
      return "precondition error";
    case SW_ERR_STREAM:
      return "stream error";
    case SW_ERR_CAPACITY:
      return "capacity error";
    case SW_ERR_ORACLE:
      return "oracle error";
    case SW_ERR_CONNECTION:
      return "connection error";
    case SW_ERR_IO:
      return "i/o error";
    case SW_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* sw_last_error(void) { return g_last_error.c_str(); }

sw_status sw_oracle_modular(const double* weights, size_t n, sw_oracle** out) {
  return Guard([&] {
    RequireOut(out);
    if (weights == nullptr && n > 0) throw sw::ParameterError("weights is NULL");
    std::vector<double> w(weights, weights + n);
    *out = Wrap(std::make_unique<sw::ModularObjective>(std::move(w)), "modular");
  });
}

sw_status sw_oracle_coverage_file(const char* json_path, sw_oracle** out) {
  return Guard([&] {
    RequireOut(out);
    if (json_path == nullptr) throw sw::ParameterError("path is NULL");
    sw::CoverageSpec spec = sw::ReadCoverageJson(json_path);
    *out = Wrap(std::make_unique<sw::CoverageObjective>(
                    std::move(spec.sets), std::move(spec.universe_weights)),
                "coverage");
  });
}

sw_status sw_oracle_coverage_json(const char* json_text, sw_oracle** out) {
  return Guard([&] {
    RequireOut(out);
    if (json_text == nullptr) throw sw::ParameterError("JSON text is NULL");
    sw::CoverageSpec spec = sw::ParseCoverageJson(json_text);
    *out = Wrap(std::make_unique<sw::CoverageObjective>(
                    std::move(spec.sets), std::move(spec.universe_weights)),
                "coverage");
  });
}

sw_status sw_oracle_hard(size_t k, size_t d, sw_oracle** out) {
  return Guard([&] {
    RequireOut(out);
    const sw::HardInstanceParams params{k, d};
    auto* o = Wrap(std::make_unique<sw::HardInstance>(params), "hard");
    o->hard = params;
    *out = o;
  });
}

sw_status sw_oracle_r2_file(const char* csv_path, int pairwise,
                            sw_oracle** out) {
  return Guard([&] {
    RequireOut(out);
    if (csv_path == nullptr) throw sw::ParameterError("path is NULL");
    const sw::RegressionTable table = sw::ReadRegressionCsv(csv_path);
    *out = Wrap(std::make_unique<sw::R2Objective>(
                    sw::MakeRegressionData(table, pairwise != 0)),
                "r2");
  });
}

sw_status sw_oracle_logistic_file(const char* csv_path, int pairwise,
                                  sw_oracle** out) {
  return Guard([&] {
    RequireOut(out);
    if (csv_path == nullptr) throw sw::ParameterError("path is NULL");
    const sw::RegressionTable table = sw::ReadRegressionCsv(csv_path);
    *out = Wrap(std::make_unique<sw::LogisticObjective>(
                    sw::MakeRegressionData(table, pairwise != 0)),
                "logistic");
  });
}

sw_status sw_oracle_extern(const char* const* argv, size_t argc, int timeout_ms,
                           sw_oracle** out) {
  return Guard([&] {
    RequireOut(out);
    sw::ExternOracleConfig config;
    for (std::size_t i = 0; i < argc; ++i) {
      if (argv[i] == nullptr) throw sw::ParameterError("argv entry is NULL");
      config.argv.emplace_back(argv[i]);
    }
    config.timeout_ms = timeout_ms;
    *out = Wrap(sw::ExternOracle::Connect(config), "extern");
  });
}

void sw_oracle_free(sw_oracle* oracle) { delete oracle; }

size_t sw_oracle_size(const sw_oracle* oracle) {
  return oracle ? oracle->valuation->size() : 0;
}

const char* sw_oracle_name(const sw_oracle* oracle) {
  return oracle ? oracle->name.c_str() : "";
}

int sw_oracle_concurrent_safe(const sw_oracle* oracle) {
  return oracle && oracle->valuation->concurrent_safe() ? 1 : 0;
}

sw_status sw_oracle_evaluate(sw_oracle* oracle, const uint32_t* ids,
                             size_t len, double* value) {
  return Guard([&] {
    RequireOut(value);
    if (oracle == nullptr) throw sw::ParameterError("oracle is NULL");
    const sw::Subset s(oracle->valuation->size(), Ids(ids, len));
    *value = sw::Evaluate(*oracle->valuation, s);
  });
}

sw_status sw_run(sw_oracle* oracle, const char* algorithm, size_t k,
                 double epsilon, double tau, const uint32_t* stream, size_t len,
                 const sw_run_options* options, sw_result** out) {
  return Guard([&] {
    RequireOut(out);
    if (oracle == nullptr) throw sw::ParameterError("oracle is NULL");
    if (algorithm == nullptr) throw sw::ParameterError("algorithm is NULL");
    const sw::AlgorithmSpec spec{sw::ParseAlgorithm(algorithm), epsilon, tau};
    sw::RunOptions run;
    if (options != nullptr) {
      run.cache_capacity = options->cache_capacity;
      run.threads = options->threads;
    }
    const std::vector<sw::ElementId> ids = Ids(stream, len);
    auto result = std::make_unique<sw_result>();
    result->run = sw::RunAlgorithm(*oracle->valuation, spec, k, ids, run);
    result->sorted = result->run.set.SortedIds();
    *out = result.release();
  });
}

void sw_result_free(sw_result* result) { delete result; }

size_t sw_result_set_size(const sw_result* r) { return r->sorted.size(); }
const uint32_t* sw_result_set(const sw_result* r) { return r->sorted.data(); }
double sw_result_value(const sw_result* r) { return r->run.value; }
uint64_t sw_result_oracle_calls(const sw_result* r) { return r->run.oracle_calls; }
size_t sw_result_stored_peak(const sw_result* r) { return r->run.stored_peak; }
size_t sw_result_instances_peak(const sw_result* r) {
  return r->run.instances_peak;
}
double sw_result_wall_ms(const sw_result* r) { return r->run.wall_ms; }
uint64_t sw_result_invariant_violations(const sw_result* r) {
  return r->run.invariant_violations;
}
uint64_t sw_result_warnings(const sw_result* r) { return r->run.warnings; }

int sw_result_max_singleton(const sw_result* r, double* m) {
  if (!r->run.max_singleton) return 0;
  if (m != nullptr) *m = *r->run.max_singleton;
  return 1;
}

sw_status sw_order_random(size_t n, uint64_t seed, uint32_t* out) {
  return Guard([&] {
    RequireOut(out);
    CopyIds(sw::RandomOrder(n, seed).ids, out);
  });
}

sw_status sw_order_adversarial(size_t k, size_t d, uint64_t seed,
                               uint32_t* out) {
  return Guard([&] {
    RequireOut(out);
    CopyIds(sw::AdversarialOrderFk({k, d}, seed).ids, out);
  });
}

sw_status sw_gamma_exact(sw_oracle* oracle, size_t r, unsigned threads,
                         sw_gamma** out) {
  return Guard([&] {
    RequireOut(out);
    if (oracle == nullptr) throw sw::ParameterError("oracle is NULL");
    auto g = std::make_unique<sw_gamma>();
    g->estimate = sw::GammaExact(*oracle->valuation, r, threads);
    g->l = g->estimate.witness_l.SortedIds();
    g->s = g->estimate.witness_s.SortedIds();
    *out = g.release();
  });
}

sw_status sw_gamma_sampled(sw_oracle* oracle, size_t r, size_t trials,
                           uint64_t seed, sw_gamma** out) {
  return Guard([&] {
    RequireOut(out);
    if (oracle == nullptr) throw sw::ParameterError("oracle is NULL");
    auto g = std::make_unique<sw_gamma>();
    g->estimate = sw::GammaSampled(*oracle->valuation, r, trials, seed);
    g->l = g->estimate.witness_l.SortedIds();
    g->s = g->estimate.witness_s.SortedIds();
    *out = g.release();
  });
}

void sw_gamma_free(sw_gamma* gamma) { delete gamma; }
double sw_gamma_value(const sw_gamma* g) { return g->estimate.value; }
size_t sw_gamma_r(const sw_gamma* g) { return g->estimate.r; }
int sw_gamma_is_exact(const sw_gamma* g) { return g->estimate.exact ? 1 : 0; }
int sw_gamma_denominator_clamped(const sw_gamma* g) {
  return g->estimate.denominator_clamped ? 1 : 0;
}
uint64_t sw_gamma_pairs(const sw_gamma* g) { return g->estimate.pairs; }

const uint32_t* sw_gamma_witness_l(const sw_gamma* g, size_t* len) {
  if (len) *len = g->l.size();
  return g->l.data();
}

const uint32_t* sw_gamma_witness_s(const sw_gamma* g, size_t* len) {
  if (len) *len = g->s.size();
  return g->s.data();
}

sw_status sw_bound(double gamma, double epsilon, double* ratio) {
  return Guard([&] {
    RequireOut(ratio);
    *ratio = sw::ApproximationBound(gamma, epsilon);
  });
}

sw_status sw_a_of_gamma(double gamma, double* a) {
  return Guard([&] {
    RequireOut(a);
    *a = sw::AOfGamma(gamma);
  });
}

sw_status sw_instance_bound(size_t k, double epsilon, double* bound) {
  return Guard([&] {
    RequireOut(bound);
    if (k == 0) throw sw::ParameterError("k must be at least 1");
    *bound = sw::InstanceCountBound(k, epsilon);
  });
}

void sw_experiment_defaults(sw_experiment_config* config) {
  if (config == nullptr) return;
  *config = sw_experiment_config{};
  config->k = 1;
  config->repetitions = 1;
  config->order = SW_ORDER_RANDOM;
  config->jobs = 1;
  config->threads = 1;
}

sw_status sw_run_experiment(sw_oracle* oracle,
                            const sw_experiment_config* config,
                            sw_table** out) {
  return Guard([&] {
    RequireOut(out);
    if (oracle == nullptr) throw sw::ParameterError("oracle is NULL");
    if (config == nullptr) throw sw::ParameterError("config is NULL");
    sw::ExperimentConfig c;
    c.objective = oracle->valuation.get();
    c.objective_name = config->objective_name ? config->objective_name
                                              : oracle->name;
    for (std::size_t i = 0; i < config->n_algorithms; ++i) {
      const sw_algorithm& a = config->algorithms[i];
      if (a.name == nullptr) throw sw::ParameterError("algorithm name is NULL");
      c.algorithms.push_back({sw::ParseAlgorithm(a.name), a.epsilon, a.tau});
    }
    c.k = config->k;
    if (config->n_seeds > 0 && config->seeds == nullptr) {
      throw sw::ParameterError("seeds is NULL");
    }
    c.seeds.assign(config->seeds, config->seeds + config->n_seeds);
    c.repetitions = config->repetitions;
    switch (config->order) {
      case SW_ORDER_RANDOM:
        c.order = sw::OrderKind::kRandom;
        break;
      case SW_ORDER_ADVERSARIAL:
        c.order = sw::OrderKind::kAdversarialFk;
        c.hard = oracle->hard;
        break;
      case SW_ORDER_FILE:
        c.order = sw::OrderKind::kFile;
        c.order_path = config->order_path ? config->order_path : "";
        break;
      default:
        throw sw::ParameterError("unknown order kind");
    }
    if (config->output_path != nullptr) c.output_path = config->output_path;
    c.jobs = config->jobs;
    c.run.cache_capacity = config->cache_capacity;
    c.run.threads = config->threads;
    auto table = std::make_unique<sw_table>();
    table->table = sw::RunExperiment(c);
    *out = table.release();
  });
}

void sw_table_free(sw_table* table) { delete table; }

size_t sw_table_row_count(const sw_table* t) { return t->table.rows.size(); }

sw_status sw_table_row(const sw_table* t, size_t i, sw_row* row) {
  return Guard([&] {
    RequireOut(row);
    if (i >= t->table.rows.size()) throw sw::ParameterError("row out of range");
    const sw::ExperimentRow& r = t->table.rows[i];
    *row = sw_row{};
    row->algorithm = r.algorithm.c_str();
    row->objective = r.objective.c_str();
    row->n = r.n;
    row->k = r.k;
    row->has_epsilon = r.epsilon ? 1 : 0;
    row->epsilon = r.epsilon.value_or(0.0);
    row->seed = r.seed;
    row->value = r.result.value;
    row->oracle_calls = r.result.oracle_calls;
    row->stored_peak = r.result.stored_peak;
    row->instances_peak = r.result.instances_peak;
    row->wall_ms = r.result.wall_ms;
    row->invariant_violations = r.result.invariant_violations;
    row->has_max_singleton = r.result.max_singleton ? 1 : 0;
    row->max_singleton = r.result.max_singleton.value_or(0.0);
  });
}

size_t sw_table_summary_count(const sw_table* t) {
  return t->table.summary.size();
}

sw_status sw_table_summary(const sw_table* t, size_t i, sw_summary* summary) {
  return Guard([&] {
    RequireOut(summary);
    if (i >= t->table.summary.size()) {
      throw sw::ParameterError("summary out of range");
    }
    const sw::AlgorithmSummary& s = t->table.summary[i];
    summary->algorithm = s.algorithm.c_str();
    summary->has_epsilon = s.epsilon ? 1 : 0;
    summary->epsilon = s.epsilon.value_or(0.0);
    summary->runs = s.runs;
    summary->mean_value = s.mean_value;
    summary->std_value = s.std_value;
    summary->mean_calls = s.mean_calls;
    summary->std_calls = s.std_calls;
    summary->mean_wall_ms = s.mean_wall_ms;
  });
}

sw_status sw_table_write_csv(const sw_table* t, const char* path) {
  return Guard([&] {
    if (path == nullptr || std::strcmp(path, "-") == 0) {
      sw::WriteCsv(std::cout, t->table.rows);
      std::cout.flush();
    } else {
      sw::WriteCsv(path, t->table.rows);
    }
  });
}

void sw_synthetic_defaults(sw_synthetic_dims* dims) {
  if (dims == nullptr) return;
  const sw::SyntheticDims d;
  *dims = sw_synthetic_dims{d.p, d.rows, d.planted, d.noise, d.n, d.universe};
}

sw_status sw_generate(const char* kind, const sw_synthetic_dims* dims,
                      uint64_t seed, const char* path,
                      size_t* ground_set_size) {
  return Guard([&] {
    if (kind == nullptr || path == nullptr) {
      throw sw::ParameterError("kind and path are required");
    }
    sw::SyntheticDims d;
    if (dims != nullptr) {
      d = sw::SyntheticDims{dims->p, dims->rows, dims->planted,
                            dims->noise, dims->n, dims->universe};
    }
    const sw::GeneratedSummary summary =
        sw::GenerateSyntheticFile(sw::ParseSyntheticKind(kind), d, seed, path);
    if (ground_set_size != nullptr) *ground_set_size = summary.ground_set_size;
  });
}

}  // extern "C"
