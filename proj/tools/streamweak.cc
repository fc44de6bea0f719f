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

// streamweak command-line front end. Talks to the library only through the
// C interface in streamweak/streamweak.h.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "streamweak/streamweak.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitOracle = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 1;

struct Failure {
  int exit_code;
  std::string message;
};

int ExitCodeFor(sw_status status) {
  switch (status) {
    case SW_OK:
      return kExitOk;
    case SW_ERR_PARAMETER:
    case SW_ERR_PRECONDITION:
    case SW_ERR_STREAM:
    case SW_ERR_CAPACITY:
      return kExitUsage;
    case SW_ERR_ORACLE:
    case SW_ERR_CONNECTION:
      return kExitOracle;
    case SW_ERR_IO:
      return kExitIo;
    case SW_ERR_INTERNAL:
      break;
  }
  return kExitInternal;
}

void Check(sw_status status) {
  if (status == SW_OK) return;
  throw Failure{ExitCodeFor(status), std::string(sw_status_name(status)) +
                                         ": " + sw_last_error()};
}

[[noreturn]] void Usage(const std::string& message) {
  throw Failure{kExitUsage, "usage error: " + message};
}

struct OracleDeleter {
  void operator()(sw_oracle* o) const { sw_oracle_free(o); }
};
struct TableDeleter {
  void operator()(sw_table* t) const { sw_table_free(t); }
};
struct GammaDeleter {
  void operator()(sw_gamma* g) const { sw_gamma_free(g); }
};
using OraclePtr = std::unique_ptr<sw_oracle, OracleDeleter>;

// Flags shared by subcommands that need an objective.
struct ObjectiveFlags {
  std::string objective;
  std::string data;
  bool pairwise = false;
  std::vector<double> weights;
  std::size_t n = 0;
  std::size_t hk = 3;
  std::size_t d = 0;
  std::string extern_cmd;
  int timeout_ms = 30000;

  void Register(CLI::App* app) {
    app->add_option("--objective", objective, "objective")
        ->required()
        ->check(CLI::IsMember(
            {"modular", "coverage", "hard", "r2", "logistic", "extern"}));
    app->add_option("--data", data,
                    "coverage JSON or regression CSV (coverage, r2, logistic)");
    app->add_flag("--pairwise", pairwise,
                  "expand regression features to pairwise products");
    app->add_option("--weights", weights, "modular weights")->delimiter(',');
    app->add_option("--n", n, "modular ground set size (weights 1..n)");
    app->add_option("--hk", hk, "hard instance pairs")->capture_default_str();
    app->add_option("--d", d, "hard instance dummies")->capture_default_str();
    app->add_option("--extern-cmd", extern_cmd,
                    "external oracle command line (whitespace separated)");
    app->add_option("--timeout-ms", timeout_ms, "external oracle timeout")
        ->capture_default_str();
  }

  void Validate() const {
    if (objective == "modular" && weights.empty() && n == 0) {
      Usage("modular objective needs --weights or --n");
    }
    if ((objective == "coverage" || objective == "r2" ||
         objective == "logistic") &&
        data.empty()) {
      Usage("--objective " + objective + " needs --data");
    }
    if (objective == "hard" && hk == 0) Usage("--hk must be at least 1");
    if (objective == "extern" && extern_cmd.empty()) {
      Usage("--objective extern needs --extern-cmd");
    }
    if (timeout_ms <= 0) Usage("--timeout-ms must be positive");
  }

  OraclePtr Make() const {
    sw_oracle* out = nullptr;
    if (objective == "modular") {
      std::vector<double> w = weights;
      if (w.empty()) {
        w.resize(n);
        std::iota(w.begin(), w.end(), 1.0);
      }
      Check(sw_oracle_modular(w.data(), w.size(), &out));
    } else if (objective == "coverage") {
      Check(sw_oracle_coverage_file(data.c_str(), &out));
    } else if (objective == "hard") {
      Check(sw_oracle_hard(hk, d, &out));
    } else if (objective == "r2") {
      Check(sw_oracle_r2_file(data.c_str(), pairwise ? 1 : 0, &out));
    } else if (objective == "logistic") {
      Check(sw_oracle_logistic_file(data.c_str(), pairwise ? 1 : 0, &out));
    } else {
      std::istringstream words(extern_cmd);
      std::vector<std::string> args;
      for (std::string w; words >> w;) args.push_back(w);
      std::vector<const char*> argv;
      for (const std::string& a : args) argv.push_back(a.c_str());
      Check(sw_oracle_extern(argv.data(), argv.size(), timeout_ms, &out));
    }
    return OraclePtr(out);
  }
};

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string IdList(const uint32_t* ids, size_t len) {
  std::string s = "{";
  for (size_t i = 0; i < len; ++i) {
    if (i) s += ", ";
    s += std::to_string(ids[i]);
  }
  return s + "}";
}

std::vector<uint64_t> SeedList(uint64_t base, std::size_t count) {
  std::vector<uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = base + i;
  return seeds;
}

void PrintSummary(const sw_table* table, std::ostream& out) {
  const size_t count = sw_table_summary_count(table);
  for (size_t i = 0; i < count; ++i) {
    sw_summary s;
    Check(sw_table_summary(table, i, &s));
    out << s.algorithm;
    if (s.has_epsilon) out << "(eps=" << Fmt(s.epsilon) << ")";
    out << " runs=" << s.runs << " value=" << Fmt(s.mean_value) << " +- "
        << Fmt(s.std_value) << " calls=" << Fmt(s.mean_calls) << " +- "
        << Fmt(s.std_calls) << " wall_ms=" << Fmt(s.mean_wall_ms) << "\n";
  }
}

struct RunFlags {
  ObjectiveFlags objective;
  std::vector<std::string> algos;
  std::size_t k = 0;
  std::vector<double> epsilons;
  std::optional<double> tau;
  std::size_t seeds = 1;
  uint64_t seed = 0;
  std::size_t repetitions = 1;
  std::string order = "random";
  std::string order_file;
  std::string out;
  unsigned jobs = 1;
  std::size_t cache = 0;
  unsigned threads = 1;
};

int CmdRun(const RunFlags& f) {
  f.objective.Validate();
  if (f.k == 0) Usage("--k must be at least 1");
  if (f.seeds == 0) Usage("--seeds must be at least 1");
  if (f.order == "file" && f.order_file.empty()) {
    Usage("--order file needs --order-file");
  }
  if (f.order == "adversarial" && f.objective.objective != "hard") {
    Usage("--order adversarial needs --objective hard");
  }
  std::vector<sw_algorithm> algorithms;
  for (const std::string& a : f.algos) {
    if (a == "streak") {
      if (f.epsilons.empty()) Usage("--algo streak needs --epsilon");
      for (double eps : f.epsilons) {
        if (!(eps > 0.0 && eps < 1.0)) Usage("--epsilon must lie in (0, 1)");
        algorithms.push_back({"streak", eps, 0.0});
      }
    } else if (a == "tg") {
      if (!f.tau) Usage("--algo tg needs --tau");
      if (!(*f.tau >= 0.0) || std::isinf(*f.tau)) {
        Usage("--tau must be finite and nonnegative");
      }
      algorithms.push_back({"tg", 0.0, *f.tau});
    } else {
      algorithms.push_back({a.c_str(), 0.0, 0.0});
    }
  }

  OraclePtr oracle = f.objective.Make();
  const std::vector<uint64_t> seeds = SeedList(f.seed, f.seeds);
  sw_experiment_config config;
  sw_experiment_defaults(&config);
  config.objective_name = f.objective.objective.c_str();
  config.algorithms = algorithms.data();
  config.n_algorithms = algorithms.size();
  config.k = f.k;
  config.seeds = seeds.data();
  config.n_seeds = seeds.size();
  config.repetitions = f.repetitions;
  config.order = f.order == "random"        ? SW_ORDER_RANDOM
                 : f.order == "adversarial" ? SW_ORDER_ADVERSARIAL
                                            : SW_ORDER_FILE;
  config.order_path = f.order_file.empty() ? nullptr : f.order_file.c_str();
  config.output_path =
      f.out.empty() || f.out == "-" ? nullptr : f.out.c_str();
  config.jobs = f.jobs;
  config.cache_capacity = f.cache;
  config.threads = f.threads;

  sw_table* raw = nullptr;
  Check(sw_run_experiment(oracle.get(), &config, &raw));
  std::unique_ptr<sw_table, TableDeleter> table(raw);
  if (config.output_path == nullptr) Check(sw_table_write_csv(raw, "-"));
  PrintSummary(raw, std::cerr);
  return kExitOk;
}

struct GammaFlags {
  ObjectiveFlags objective;
  std::optional<std::size_t> r;
  bool sampled = false;
  std::size_t trials = 1000;
  uint64_t seed = 0;
  unsigned threads = 1;
};

int CmdGamma(const GammaFlags& f) {
  f.objective.Validate();
  if (f.sampled && f.trials == 0) Usage("--trials must be at least 1");
  OraclePtr oracle = f.objective.Make();
  const std::size_t r = f.r.value_or(sw_oracle_size(oracle.get()));
  sw_gamma* raw = nullptr;
  if (f.sampled) {
    Check(sw_gamma_sampled(oracle.get(), r, f.trials, f.seed, &raw));
  } else {
    Check(sw_gamma_exact(oracle.get(), r, f.threads, &raw));
  }
  std::unique_ptr<sw_gamma, GammaDeleter> gamma(raw);
  size_t l_len = 0;
  size_t s_len = 0;
  const uint32_t* l = sw_gamma_witness_l(raw, &l_len);
  const uint32_t* s = sw_gamma_witness_s(raw, &s_len);
  std::cout << "gamma " << Fmt(sw_gamma_value(raw)) << "\n"
            << "r " << sw_gamma_r(raw) << "\n"
            << "mode " << (sw_gamma_is_exact(raw) ? "exact" : "sampled")
            << "\n"
            << "pairs " << sw_gamma_pairs(raw) << "\n"
            << "witness_L " << IdList(l, l_len) << "\n"
            << "witness_S " << IdList(s, s_len) << "\n";
  if (sw_gamma_denominator_clamped(raw)) {
    std::cout << "note some denominators were clamped to 1e-15\n";
  }
  return kExitOk;
}

int CmdBound(double gamma, double epsilon, std::optional<std::size_t> k) {
  double ratio = 0.0;
  double a = 0.0;
  Check(sw_bound(gamma, epsilon, &ratio));
  Check(sw_a_of_gamma(gamma, &a));
  std::cout << "bound " << Fmt(ratio) << "\n"
            << "a " << Fmt(a) << "\n";
  if (k) {
    double instances = 0.0;
    Check(sw_instance_bound(*k, epsilon, &instances));
    std::cout << "instance_bound " << Fmt(instances) << "\n";
  }
  return kExitOk;
}

struct DemoFlags {
  std::size_t hk = 3;
  std::size_t d = 100;
  std::size_t seeds = 100;
  uint64_t seed = 0;
  double epsilon = 0.2;
  unsigned jobs = 1;
};

double MeanValue(sw_oracle* oracle, const sw_experiment_config& config) {
  sw_table* raw = nullptr;
  Check(sw_run_experiment(oracle, &config, &raw));
  std::unique_ptr<sw_table, TableDeleter> table(raw);
  sw_summary s;
  Check(sw_table_summary(raw, 0, &s));
  return s.mean_value;
}

int CmdDemoHard(const DemoFlags& f) {
  if (f.hk == 0) Usage("--hk must be at least 1");
  if (f.seeds == 0) Usage("--seeds must be at least 1");
  if (!(f.epsilon > 0.0 && f.epsilon < 1.0)) {
    Usage("--epsilon must lie in (0, 1)");
  }
  sw_oracle* raw = nullptr;
  Check(sw_oracle_hard(f.hk, f.d, &raw));
  OraclePtr oracle(raw);
  const sw_algorithm streak{"streak", f.epsilon, 0.0};
  const std::size_t budget = 2 * f.hk;

  sw_experiment_config config;
  sw_experiment_defaults(&config);
  config.objective_name = "hard";
  config.algorithms = &streak;
  config.n_algorithms = 1;
  config.k = budget;
  config.jobs = f.jobs;

  config.order = SW_ORDER_ADVERSARIAL;
  config.seeds = &f.seed;
  config.n_seeds = 1;
  const double adversarial = MeanValue(raw, config);

  const std::vector<uint64_t> seeds = SeedList(f.seed, f.seeds);
  config.order = SW_ORDER_RANDOM;
  config.seeds = seeds.data();
  config.n_seeds = seeds.size();
  const double random = MeanValue(raw, config);

  const double opt = static_cast<double>(budget);
  std::cout << "instance f_" << f.hk << " d=" << f.d << " budget=" << budget
            << " epsilon=" << Fmt(f.epsilon) << "\n";
  std::cout << "order        value        ratio\n";
  std::printf("adversarial  %-12s %s\n", Fmt(adversarial).c_str(),
              Fmt(adversarial / opt).c_str());
  std::printf("random       %-12s %s\n", Fmt(random).c_str(),
              Fmt(random / opt).c_str());
  std::printf("opt          %-12s 1\n", Fmt(opt).c_str());
  std::printf("(random is the mean over %zu seeds)\n", f.seeds);
  std::fflush(stdout);
  return kExitOk;
}

struct GenFlags {
  std::string kind;
  std::string out;
  uint64_t seed = 0;
  sw_synthetic_dims dims{};
};

int CmdGen(const GenFlags& f) {
  size_t n = 0;
  Check(sw_generate(f.kind.c_str(), &f.dims, f.seed, f.out.c_str(), &n));
  std::cout << "wrote " << f.out << " (" << f.kind << ", N = " << n << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming maximization of weakly submodular functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sw_version());

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "run algorithms on an objective");
  run.objective.Register(run_cmd);
  run_cmd->add_option("--algo", run.algos, "algorithm (repeatable)")
      ->required()
      ->check(CLI::IsMember({"streak", "tg", "random", "local", "greedy", "opt"}));
  run_cmd->add_option("--k", run.k, "cardinality budget")->required();
  run_cmd->add_option("--epsilon", run.epsilons,
                      "STREAK lattice parameter (repeatable)");
  run_cmd->add_option("--tau", run.tau, "threshold greedy target");
  run_cmd->add_option("--seeds", run.seeds, "number of order seeds")
      ->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "first order seed")
      ->capture_default_str();
  run_cmd->add_option("--repetitions", run.repetitions, "repetitions per seed")
      ->capture_default_str();
  run_cmd->add_option("--order", run.order, "stream order")
      ->check(CLI::IsMember({"random", "adversarial", "file"}))
      ->capture_default_str();
  run_cmd->add_option("--order-file", run.order_file,
                      "whitespace-separated permutation");
  run_cmd->add_option("--out", run.out, "CSV path (default stdout)");
  run_cmd->add_option("--jobs", run.jobs, "parallel repetitions")
      ->capture_default_str();
  run_cmd->add_option("--cache", run.cache, "STREAK oracle cache entries")
      ->capture_default_str();
  run_cmd->add_option("--threads", run.threads, "per-run oracle fan-out")
      ->capture_default_str();

  GammaFlags gamma;
  CLI::App* gamma_cmd =
      app.add_subcommand("gamma", "weak submodularity ratio of an objective");
  gamma.objective.Register(gamma_cmd);
  gamma_cmd->add_option("--r", gamma.r, "budget r (default N)");
  gamma_cmd->add_flag("--sampled", gamma.sampled, "sample pairs");
  gamma_cmd->add_option("--trials", gamma.trials, "sampled pairs")
      ->capture_default_str();
  gamma_cmd->add_option("--seed", gamma.seed, "sampling seed")
      ->capture_default_str();
  gamma_cmd->add_option("--threads", gamma.threads, "enumeration threads")
      ->capture_default_str();

  double bound_gamma = 0.0;
  double bound_eps = 0.0;
  std::optional<std::size_t> bound_k;
  CLI::App* bound_cmd =
      app.add_subcommand("bound", "STREAK approximation ratio and a(gamma)");
  bound_cmd->add_option("--gamma", bound_gamma, "submodularity ratio")
      ->required();
  bound_cmd->add_option("--epsilon", bound_eps, "lattice parameter")
      ->capture_default_str();
  bound_cmd->add_option("--k", bound_k, "also print the instance-count bound");

  DemoFlags demo;
  CLI::App* demo_cmd = app.add_subcommand(
      "demo-hard", "STREAK on the hard instance: adversarial vs random order");
  demo_cmd->add_option("--hk", demo.hk, "hard instance pairs")
      ->capture_default_str();
  demo_cmd->add_option("--d", demo.d, "dummies")->capture_default_str();
  demo_cmd->add_option("--seeds", demo.seeds, "random-order seeds")
      ->capture_default_str();
  demo_cmd->add_option("--seed", demo.seed, "first seed")->capture_default_str();
  demo_cmd->add_option("--epsilon", demo.epsilon, "lattice parameter")
      ->capture_default_str();
  demo_cmd->add_option("--jobs", demo.jobs, "parallel repetitions")
      ->capture_default_str();

  GenFlags gen;
  sw_synthetic_defaults(&gen.dims);
  CLI::App* gen_cmd = app.add_subcommand("gen", "write a synthetic dataset");
  gen_cmd->add_option("--kind", gen.kind, "dataset kind")
      ->required()
      ->check(CLI::IsMember(
          {"pairwise-products", "planted-regression", "coverage-random"}));
  gen_cmd->add_option("--out", gen.out, "output path")->required();
  gen_cmd->add_option("--seed", gen.seed, "generator seed")
      ->capture_default_str();
  gen_cmd->add_option("--p", gen.dims.p, "base features")->capture_default_str();
  gen_cmd->add_option("--rows", gen.dims.rows, "rows")->capture_default_str();
  gen_cmd->add_option("--planted", gen.dims.planted, "planted columns")
      ->capture_default_str();
  gen_cmd->add_option("--noise", gen.dims.noise, "noise std")
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.dims.n, "coverage sets")->capture_default_str();
  gen_cmd->add_option("--universe", gen.dims.universe, "coverage items")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return CmdRun(run);
    if (gamma_cmd->parsed()) return CmdGamma(gamma);
    if (bound_cmd->parsed()) return CmdBound(bound_gamma, bound_eps, bound_k);
    if (demo_cmd->parsed()) return CmdDemoHard(demo);
    if (gen_cmd->parsed()) return CmdGen(gen);
  } catch (const Failure& f) {
    std::cerr << f.message << "\n";
    return f.exit_code;
  }
  return kExitUsage;
}
