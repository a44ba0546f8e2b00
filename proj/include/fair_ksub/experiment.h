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

#ifndef FAIR_KSUB_EXPERIMENT_H_
#define FAIR_KSUB_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fair_ksub/entropy.h"
#include "fair_ksub/kic.h"
#include "fair_ksub/synthetic.h"

namespace fair_ksub {

enum class Application { kKic, kEntropy, kSynthetic };
enum class Algorithm {
  kFairGreedy,
  kFairThreshold,
  kTsGreedy,
  kIsGreedy,
  kRandomFair,
};

std::string ApplicationName(Application app);
std::string AlgorithmName(Algorithm algorithm);

// Budget sweep description. Parsed from a flat "key = value" file; see
// README.md for the keys.
struct ExperimentConfig {
  Application application = Application::kSynthetic;

  std::string synthetic_family = "coverage";  // coverage | modular
  CoverageParams coverage;
  ModularParams modular;

  std::string graph_path;  // empty: generate from kic_gen
  KicGenParams kic_gen;
  int mc_samples = 100;
  int final_mc_samples = 1000;

  std::string readings_path;  // empty: generate from readings_gen
  ReadingsGenParams readings_gen;
  std::vector<double> bin_widths = {2.0, 5.0, 100.0};

  // One value per type, or a single value applied to every type.
  std::vector<int> lower = {0};
  std::vector<int> upper;  // empty: n for every type
  std::vector<int> budgets;
  std::vector<Algorithm> algorithms;
  std::vector<double> eps = {0.1};
  std::vector<double> delta = {0.0};
  int trials = 10;
  uint64_t seed = 0;
  double repeat_log_base = 2.0;
  bool wall_time = false;
  int jobs = 1;
  uint64_t max_file_bytes = kDefaultMaxFileBytes;
  std::string output;

  // Throws kConfig when a field is out of range.
  void Validate() const;
};

// Throws kConfig on unknown keys or malformed values. Relative data paths
// are resolved against base_dir.
ExperimentConfig ParseConfig(const std::string& text,
                             const std::string& base_dir = "");
ExperimentConfig LoadConfig(const std::string& path);

struct ResultRow {
  std::string application;
  std::string algorithm;
  int budget = 0;
  double eps = 0.0;
  double delta = 0.0;
  int run = 0;
  double objective = 0.0;
  int64_t oracle_evals = 0;
  int bias_error = 0;
  int64_t wall_ms = 0;
  // Combination could not be run (e.g. infeasible bounds at this budget).
  bool skipped = false;
  std::string skip_reason;
};

// ceil(log_base(n)), at least 1: how many noisy repetitions to median over.
int RepeatCount(int n, double base);

// Runs every (budget, algorithm, eps, delta) combination in that nesting
// order. Per-combination failures become skip rows.
std::vector<ResultRow> RunExperiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader =
    "application,algorithm,budget,eps,delta,run,objective,oracle_evals,"
    "bias_error,wall_ms";

std::string FormatCsv(const std::vector<ResultRow>& rows);
void WriteCsv(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace fair_ksub

#endif  // FAIR_KSUB_EXPERIMENT_H_
