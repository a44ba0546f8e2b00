// Copyright 2026 The Authors.
//
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

// fair-ksub: experiment runner and small-instance utilities.
//
//   fair-ksub run --config <path> [--out <path>] [--seed <u64>] [--jobs <n>]
//   fair-ksub check --oracle family=coverage,n=6,k=2,universe=10,density=0.3
//   fair-ksub opt --brute --oracle <params> --budget B --lower l --upper u
//
// Exit codes: 0 success, 1 property violated (check), 2 config error,
// 3 data error.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fair_ksub/error.h"
#include "fair_ksub/experiment.h"
#include "fair_ksub/oracle_kit.h"
#include "fair_ksub/solvers.h"
#include "fair_ksub/synthetic.h"

namespace fk = fair_ksub;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

int ExitCodeFor(fk::ErrorCode code) {
  switch (code) {
    case fk::ErrorCode::kConfig:
    case fk::ErrorCode::kInvalidParameter:
    case fk::ErrorCode::kInvalidBounds:
    case fk::ErrorCode::kLowerSumExceedsBudget:
    case fk::ErrorCode::kUpperSumBelowBudget:
    case fk::ErrorCode::kInstanceTooLarge:
      return kExitConfig;
    default:
      return kExitData;
  }
}

// "key=value,key=value" parameters for a synthetic oracle.
struct OracleParams {
  std::string family = "coverage";
  int n = 6;
  int k = 2;
  int universe = 10;
  double density = 0.3;
  double weight_min = 1.0;
  double weight_max = 1.0;
  uint64_t seed = 1;
};

template <typename T>
T ParseField(const std::string& key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw fk::Error(fk::ErrorCode::kConfig,
                    "bad value \"" + text + "\" for oracle parameter " + key);
  }
  return value;
}

OracleParams ParseOracleParams(const std::string& spec) {
  OracleParams p;
  bool weights_set = false;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw fk::Error(fk::ErrorCode::kConfig, "expected key=value, got " + item);
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "family") {
      p.family = value;
    } else if (key == "n") {
      p.n = ParseField<int>(key, value);
    } else if (key == "k") {
      p.k = ParseField<int>(key, value);
    } else if (key == "universe" || key == "m") {
      p.universe = ParseField<int>(key, value);
    } else if (key == "density") {
      p.density = ParseField<double>(key, value);
    } else if (key == "weight_min") {
      p.weight_min = ParseField<double>(key, value);
      weights_set = true;
    } else if (key == "weight_max") {
      p.weight_max = ParseField<double>(key, value);
      weights_set = true;
    } else if (key == "seed") {
      p.seed = ParseField<uint64_t>(key, value);
    } else {
      throw fk::Error(fk::ErrorCode::kConfig, "unknown oracle parameter " + key);
    }
  }
  if (p.family == "modular" && !weights_set) {
    p.weight_min = 0.0;
    p.weight_max = 10.0;
  }
  return p;
}

std::unique_ptr<fk::ValueOracle> MakeOracle(const OracleParams& p) {
  if (p.family == "coverage") {
    return std::make_unique<fk::CoverageOracle>(fk::GenCoverageInstance(
        {p.n, p.k, p.universe, p.density, p.weight_min, p.weight_max}, p.seed));
  }
  if (p.family == "modular") {
    return std::make_unique<fk::ModularOracle>(
        fk::GenModularInstance({p.n, p.k, p.weight_min, p.weight_max}, p.seed));
  }
  if (p.family == "total-squared") {
    return std::make_unique<fk::FunctionOracle>(
        p.n, p.k,
        [](const fk::KAssignment& s) {
          return static_cast<double>(s.total()) * s.total();
        },
        true, "total-squared");
  }
  throw fk::Error(fk::ErrorCode::kConfig,
                  "unknown oracle family " + p.family +
                      " (coverage, modular, total-squared)");
}

std::vector<int> ExpandBounds(const std::vector<int>& values, int k, int fill) {
  if (values.empty()) return std::vector<int>(k, fill);
  if (values.size() == 1) return std::vector<int>(k, values[0]);
  if (static_cast<int>(values.size()) != k) {
    throw fk::Error(fk::ErrorCode::kConfig, "bounds must list 1 or k values");
  }
  return values;
}

int RunCommand(const std::string& config_path, const std::string& out,
               const std::optional<uint64_t>& seed, const std::optional<int>& jobs) {
  fk::ExperimentConfig config = fk::LoadConfig(config_path);
  if (!out.empty()) config.output = out;
  if (seed) config.seed = *seed;
  if (jobs) config.jobs = *jobs;
  if (config.output.empty()) {
    throw fk::Error(fk::ErrorCode::kConfig,
                    "no output path: set output in the config or pass --out");
  }
  const auto rows = fk::RunExperiment(config);
  fk::WriteCsv(rows, config.output);
  int skipped = 0;
  for (const auto& r : rows) {
    if (r.skipped) {
      ++skipped;
      std::cerr << "skip " << r.algorithm << " B=" << r.budget << ": "
                << r.skip_reason << "\n";
    }
  }
  std::cout << "wrote " << rows.size() << " rows (" << skipped << " skipped) to "
            << config.output << "\n";
  return 0;
}

int CheckCommand(const std::string& oracle_spec) {
  const OracleParams params = ParseOracleParams(oracle_spec);
  auto oracle = MakeOracle(params);
  const fk::CheckResult monotone = fk::CheckMonotone(*oracle, params.n, params.k);
  const fk::CheckResult ksub = fk::CheckKSubmodular(*oracle, params.n, params.k);
  auto report = [](const char* name, const fk::CheckResult& r) {
    std::cout << name << ": " << (r.ok ? "ok" : "VIOLATED") << " ("
              << r.comparisons << " comparisons)\n";
    if (r.counterexample) {
      std::cout << "  counterexample " << r.counterexample->ToString() << "\n";
    }
  };
  report("monotone", monotone);
  report("k-submodular", ksub);
  return monotone.ok && ksub.ok ? 0 : kExitViolation;
}

int OptCommand(const std::string& oracle_spec, int budget,
               const std::vector<int>& lower, const std::vector<int>& upper,
               bool allow_large) {
  const OracleParams params = ParseOracleParams(oracle_spec);
  auto oracle = MakeOracle(params);
  const fk::FairnessSpec spec(params.n, params.k, budget,
                              ExpandBounds(lower, params.k, 0),
                              ExpandBounds(upper, params.k, params.n));
  const fk::SolveResult opt =
      fk::BruteForceOpt(*oracle, spec, {.allow_large = allow_large});
  const fk::SolveResult greedy = fk::FairGreedy(*oracle, spec);
  std::printf("spec          %s\n", spec.ToString().c_str());
  std::printf("optimum       %.6f %s (%lld evaluations)\n", opt.value,
              opt.solution.ToString().c_str(),
              static_cast<long long>(opt.oracle_evals));
  std::printf("fair-greedy   %.6f %s (%lld evaluations)\n", greedy.value,
              greedy.solution.ToString().c_str(),
              static_cast<long long>(greedy.oracle_evals));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair k-submodular maximization: solvers and experiment runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a budget sweep and write CSV");
  std::string config_path;
  std::string out;
  std::optional<uint64_t> seed;
  std::optional<int> jobs;
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--out", out, "CSV output path (overrides config)");
  run->add_option("--seed", seed, "Master seed (overrides config)");
  run->add_option("--jobs", jobs, "Parallel workers (overrides config)");

  auto* check = app.add_subcommand(
      "check", "Exhaustively check monotonicity and k-submodularity");
  std::string check_oracle;
  check->add_option("--oracle", check_oracle,
                    "family=coverage|modular|total-squared,n=,k=,universe=,"
                    "density=,weight_min=,weight_max=,seed=")
      ->required();

  auto* opt = app.add_subcommand("opt", "Exact optimum of a small instance");
  bool brute = false;
  std::string opt_oracle;
  int budget = 1;
  std::vector<int> lower;
  std::vector<int> upper;
  bool allow_large = false;
  opt->add_flag("--brute", brute, "Exhaustive enumeration")->required();
  opt->add_option("--oracle", opt_oracle, "Synthetic oracle parameters")->required();
  opt->add_option("--budget", budget, "Total budget B")->required();
  opt->add_option("--lower", lower, "Lower bound(s), one or k values")->delimiter(',');
  opt->add_option("--upper", upper, "Upper bound(s), one or k values")->delimiter(',');
  opt->add_flag("--allow-large", allow_large, "Lift the n <= 14, B <= 6 guard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return RunCommand(config_path, out, seed, jobs);
    if (*check) return CheckCommand(check_oracle);
    if (*opt) return OptCommand(opt_oracle, budget, lower, upper, allow_large);
  } catch (const fk::Error& e) {
    std::cerr << "fair-ksub: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  }
  return 0;
}
