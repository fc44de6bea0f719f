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

#include "streamweak/harness.h"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>

#include "streamweak/baselines.h"
#include "streamweak/error.h"
#include "streamweak/rng.h"
#include "streamweak/streak.h"
#include "streamweak/threshold_greedy.h"

namespace streamweak {
namespace {

std::vector<ElementId> Iota(std::size_t first, std::size_t count) {
  std::vector<ElementId> ids;
  ids.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ids.emplace_back(static_cast<std::uint32_t>(first + i));
  }
  return ids;
}

StreamOrder MakeOrder(const ExperimentConfig& config, std::uint64_t seed) {
  switch (config.order) {
    case OrderKind::kRandom:
      return RandomOrder(config.objective->size(), seed);
    case OrderKind::kAdversarialFk:
      return AdversarialOrderFk(*config.hard, seed);
    case OrderKind::kFile:
      return ReadOrderFile(config.order_path, config.objective->size());
  }
  throw ParameterError("unknown order kind");
}

}  // namespace

StreamOrder RandomOrder(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParameterError("random order needs n >= 1");
  StreamOrder order;
  order.ids = Iota(0, n);
  Xoshiro256 rng(seed);
  Shuffle(order.ids, rng);
  order.provenance = OrderKind::kRandom;
  order.seed = seed;
  return order;
}

StreamOrder AdversarialOrderFk(const HardInstanceParams& params,
                               std::uint64_t seed) {
  params.Validate();
  Xoshiro256 rng(seed);
  // Prefix: u-elements [0, k) and dummies [2k, 2k + d).
  std::vector<ElementId> prefix = Iota(0, params.k);
  for (const ElementId e : Iota(2 * params.k, params.d)) prefix.push_back(e);
  Shuffle(prefix, rng);
  std::vector<ElementId> suffix = Iota(params.k, params.k);
  Shuffle(suffix, rng);

  StreamOrder order;
  order.ids = std::move(prefix);
  order.ids.insert(order.ids.end(), suffix.begin(), suffix.end());
  order.provenance = OrderKind::kAdversarialFk;
  order.seed = seed;
  return order;
}

StreamOrder ReadOrderFile(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open order file '" + path + "': " +
                  std::strerror(errno));
  }
  StreamOrder order;
  std::string token;
  while (in >> token) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long id = std::strtoull(token.c_str(), &end, 10);
    if (end != token.c_str() + token.size() || errno == ERANGE ||
        token[0] == '-' || id >= n) {
      throw StreamError("order file '" + path + "': bad element id '" + token +
                        "' for ground set of size " + std::to_string(n));
    }
    order.ids.emplace_back(static_cast<std::uint32_t>(id));
  }
  if (!IsPermutation(order.ids, n)) {
    throw StreamError("order file '" + path + "' is not a permutation of [0, " +
                      std::to_string(n) + ")");
  }
  order.provenance = OrderKind::kFile;
  order.path = path;
  return order;
}

bool IsPermutation(std::span<const ElementId> ids, std::size_t n) {
  if (ids.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (const ElementId u : ids) {
    if (u.value >= n || seen[u.value]) return false;
    seen[u.value] = true;
  }
  return true;
}

AlgorithmKind ParseAlgorithm(const std::string& name) {
  if (name == "streak") return AlgorithmKind::kStreak;
  if (name == "tg") return AlgorithmKind::kThresholdGreedy;
  if (name == "random") return AlgorithmKind::kRandomSubset;
  if (name == "local") return AlgorithmKind::kLocalSearch;
  if (name == "greedy") return AlgorithmKind::kFullGreedy;
  if (name == "opt") return AlgorithmKind::kBruteForce;
  throw ParameterError("unknown algorithm '" + name +
                       "' (streak, tg, random, local, greedy, opt)");
}

const char* AlgorithmName(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kStreak:
      return "streak";
    case AlgorithmKind::kThresholdGreedy:
      return "tg";
    case AlgorithmKind::kRandomSubset:
      return "random";
    case AlgorithmKind::kLocalSearch:
      return "local";
    case AlgorithmKind::kFullGreedy:
      return "greedy";
    case AlgorithmKind::kBruteForce:
      return "opt";
  }
  return "?";
}

RunResult RunAlgorithm(Valuation& oracle, const AlgorithmSpec& spec,
                       std::size_t k, std::span<const ElementId> stream,
                       RunOptions options) {
  switch (spec.kind) {
    case AlgorithmKind::kStreak: {
      StreakOptions streak;
      streak.cache_capacity = options.cache_capacity;
      streak.threads = options.threads;
      return RunStreak(oracle, k, spec.epsilon, stream, streak);
    }
    case AlgorithmKind::kThresholdGreedy:
      return RunThresholdGreedy(oracle, k, spec.tau, stream);
    case AlgorithmKind::kRandomSubset:
      return RunRandomSubset(oracle, k, stream);
    case AlgorithmKind::kLocalSearch:
      return RunLocalSearch(oracle, k, stream, {options.threads});
    case AlgorithmKind::kFullGreedy:
      return RunFullGreedy(oracle, k, {.lazy = false, .threads = options.threads});
    case AlgorithmKind::kBruteForce:
      return RunBruteForceOpt(oracle, k);
  }
  throw ParameterError("unknown algorithm");
}

void ExperimentConfig::Validate() const {
  if (objective == nullptr) throw ParameterError("experiment has no objective");
  if (algorithms.empty()) throw ParameterError("experiment has no algorithms");
  if (k == 0) throw ParameterError("k must be at least 1");
  if (seeds.empty()) throw ParameterError("experiment needs at least one seed");
  if (repetitions == 0) throw ParameterError("repetitions must be at least 1");
  if (jobs == 0) throw ParameterError("jobs must be at least 1");
  for (const AlgorithmSpec& a : algorithms) {
    if (a.kind == AlgorithmKind::kStreak &&
        !(a.epsilon > 0.0 && a.epsilon < 1.0)) {
      throw ParameterError("STREAK needs epsilon in (0, 1)");
    }
    if (a.kind == AlgorithmKind::kThresholdGreedy &&
        (!(a.tau >= 0.0) || !std::isfinite(a.tau))) {
      throw ParameterError("threshold greedy needs a finite tau >= 0");
    }
    if (a.kind == AlgorithmKind::kBruteForce) {
      const std::size_t n = objective->size();
      if (n > kBruteForceMaxN || CountSubsetsUpTo(n, k) > kBruteForceMaxSubsets) {
        throw CapacityError("brute-force OPT is limited to n <= " +
                            std::to_string(kBruteForceMaxN) + " and " +
                            std::to_string(kBruteForceMaxSubsets) +
                            " subsets; ground set has n = " +
                            std::to_string(n));
      }
    }
  }
  if (order == OrderKind::kAdversarialFk) {
    if (!hard) {
      throw ParameterError("adversarial order is defined only for the hard "
                           "instance");
    }
    if (hard->size() != objective->size()) {
      throw ParameterError("adversarial order size does not match objective");
    }
  }
  if (order == OrderKind::kFile && order_path.empty()) {
    throw ParameterError("file order needs a path");
  }
}

std::uint64_t RepetitionSeed(std::uint64_t seed, std::size_t rep) {
  if (rep == 0) return seed;
  SplitMix64 mix(seed ^ (0x632be59bd9b4e019ull * rep));
  return mix.Next();
}

ExperimentTable RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  struct Task {
    std::size_t algorithm;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    for (const std::uint64_t seed : config.seeds) {
      for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
        tasks.push_back({a, RepetitionSeed(seed, rep)});
      }
    }
  }

  ExperimentTable table;
  table.rows.resize(tasks.size());
  auto run_task = [&](std::size_t t) {
    const AlgorithmSpec& spec = config.algorithms[tasks[t].algorithm];
    const StreamOrder order = MakeOrder(config, tasks[t].seed);
    ExperimentRow& row = table.rows[t];
    row.algorithm = AlgorithmName(spec.kind);
    row.objective = config.objective_name.empty() ? config.objective->name()
                                                  : config.objective_name;
    row.n = config.objective->size();
    row.k = config.k;
    if (spec.kind == AlgorithmKind::kStreak) row.epsilon = spec.epsilon;
    row.seed = tasks[t].seed;
    row.result =
        RunAlgorithm(*config.objective, spec, config.k, order.ids, config.run);
  };

  const unsigned jobs =
      config.objective->concurrent_safe() ? config.jobs : 1u;
  if (jobs <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, tasks.size()); ++w) {
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) run_task(t);
      }));
    }
    for (auto& w : workers) w.get();
  }

  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    AlgorithmSummary s;
    s.algorithm = AlgorithmName(config.algorithms[a].kind);
    if (config.algorithms[a].kind == AlgorithmKind::kStreak) {
      s.epsilon = config.algorithms[a].epsilon;
    }
    std::vector<double> values;
    std::vector<double> calls;
    double wall = 0.0;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (tasks[t].algorithm != a) continue;
      values.push_back(table.rows[t].result.value);
      calls.push_back(static_cast<double>(table.rows[t].result.oracle_calls));
      wall += table.rows[t].result.wall_ms;
    }
    auto mean_std = [](const std::vector<double>& xs) {
      const double mean =
          std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
      double ss = 0.0;
      for (const double x : xs) ss += (x - mean) * (x - mean);
      const double sd =
          xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
      return std::pair{mean, sd};
    };
    s.runs = values.size();
    std::tie(s.mean_value, s.std_value) = mean_std(values);
    std::tie(s.mean_calls, s.std_calls) = mean_std(calls);
    s.mean_wall_ms = wall / static_cast<double>(values.size());
    table.summary.push_back(s);
  }

  if (!config.output_path.empty()) WriteCsv(config.output_path, table.rows);
  return table;
}

std::string FormatFloat(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void WriteCsv(std::ostream& out, std::span<const ExperimentRow> rows) {
  out << kCsvHeader << '\n';
  for (const ExperimentRow& row : rows) {
    out << row.algorithm << ',' << row.objective << ',' << row.n << ','
        << row.k << ',' << (row.epsilon ? FormatFloat(*row.epsilon) : "")
        << ',' << row.seed << ',' << FormatFloat(row.result.value) << ','
        << row.result.oracle_calls << ',' << row.result.stored_peak << ','
        << row.result.instances_peak << ',' << FormatFloat(row.result.wall_ms)
        << '\n';
  }
}

void WriteCsv(const std::string& path, std::span<const ExperimentRow> rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing: " +
                  std::strerror(errno));
  }
  WriteCsv(out, rows);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace streamweak
