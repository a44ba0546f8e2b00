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

#include "fair_ksub/experiment.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "fair_ksub/error.h"
#include "fair_ksub/hashing.h"
#include "fair_ksub/io.h"
#include "fair_ksub/oracle_kit.h"
#include "fair_ksub/solvers.h"

namespace fair_ksub {

std::string ApplicationName(Application app) {
  switch (app) {
    case Application::kKic:
      return "kic";
    case Application::kEntropy:
      return "entropy";
    case Application::kSynthetic:
      return "synthetic";
  }
  return "?";
}

std::string AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kFairGreedy:
      return "fair-greedy";
    case Algorithm::kFairThreshold:
      return "fair-threshold";
    case Algorithm::kTsGreedy:
      return "ts-greedy";
    case Algorithm::kIsGreedy:
      return "is-greedy";
    case Algorithm::kRandomFair:
      return "random-fair";
  }
  return "?";
}

namespace {

[[noreturn]] void ConfigFail(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T ParseScalar(const std::string& key, std::string_view text) {
  text = Trim(text);
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    ConfigFail("bad value \"" + std::string(text) + "\" for " + key);
  }
  return value;
}

template <typename T>
std::vector<T> ParseList(const std::string& key, std::string_view text) {
  std::vector<T> out;
  size_t start = 0;
  while (true) {
    const size_t comma = text.find(',', start);
    out.push_back(ParseScalar<T>(key, text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool ParseBool(const std::string& key, std::string_view text) {
  text = Trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  ConfigFail("bad boolean \"" + std::string(text) + "\" for " + key);
}

Algorithm ParseAlgorithm(std::string_view name) {
  name = Trim(name);
  for (Algorithm a : {Algorithm::kFairGreedy, Algorithm::kFairThreshold,
                      Algorithm::kTsGreedy, Algorithm::kIsGreedy,
                      Algorithm::kRandomFair}) {
    if (name == AlgorithmName(a)) return a;
  }
  ConfigFail("unknown algorithm \"" + std::string(name) + "\"");
}

std::string ResolvePath(const std::string& base_dir, std::string_view value) {
  std::filesystem::path p{std::string(Trim(value))};
  if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
  return p.string();
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (budgets.empty()) ConfigFail("budgets must list at least one budget");
  if (!std::is_sorted(budgets.begin(), budgets.end())) {
    ConfigFail("budgets must be sorted ascending");
  }
  if (budgets.front() < 0) ConfigFail("budgets must be non-negative");
  if (algorithms.empty()) ConfigFail("algorithms must list at least one algorithm");
  if (eps.empty()) ConfigFail("eps must not be empty");
  for (double e : eps) {
    if (!(e > 0.0 && e < 1.0)) ConfigFail("eps values must lie in (0, 1)");
  }
  if (delta.empty()) ConfigFail("delta must not be empty");
  for (double d : delta) {
    if (!(d >= 0.0 && d < 1.0)) ConfigFail("delta values must lie in [0, 1)");
  }
  if (trials < 1) ConfigFail("trials must be >= 1");
  if (!(repeat_log_base > 1.0)) ConfigFail("repeat_log_base must be > 1");
  if (jobs < 1) ConfigFail("jobs must be >= 1");
  if (mc_samples < 1 || final_mc_samples < 1) {
    ConfigFail("Monte Carlo sample counts must be >= 1");
  }
  if (lower.empty()) ConfigFail("lower must not be empty");
  if (synthetic_family != "coverage" && synthetic_family != "modular") {
    ConfigFail("synthetic.family must be coverage or modular");
  }
}

ExperimentConfig ParseConfig(const std::string& text,
                             const std::string& base_dir) {
  ExperimentConfig c;
  using Setter = std::function<void(const std::string&, std::string_view)>;
  const std::map<std::string, Setter> setters = {
      {"application",
       [&](const std::string& key, std::string_view v) {
         v = Trim(v);
         if (v == "kic") {
           c.application = Application::kKic;
         } else if (v == "entropy") {
           c.application = Application::kEntropy;
         } else if (v == "synthetic") {
           c.application = Application::kSynthetic;
         } else {
           ConfigFail("unknown " + key + " \"" + std::string(v) + "\"");
         }
       }},
      {"seed", [&](auto& k, auto v) { c.seed = ParseScalar<uint64_t>(k, v); }},
      {"output", [&](auto&, auto v) { c.output = ResolvePath(base_dir, v); }},
      {"jobs", [&](auto& k, auto v) { c.jobs = ParseScalar<int>(k, v); }},
      {"budgets", [&](auto& k, auto v) { c.budgets = ParseList<int>(k, v); }},
      {"algorithms",
       [&](auto&, std::string_view v) {
         c.algorithms.clear();
         size_t start = 0;
         while (true) {
           const size_t comma = v.find(',', start);
           c.algorithms.push_back(ParseAlgorithm(v.substr(start, comma - start)));
           if (comma == std::string_view::npos) break;
           start = comma + 1;
         }
       }},
      {"eps", [&](auto& k, auto v) { c.eps = ParseList<double>(k, v); }},
      {"delta", [&](auto& k, auto v) { c.delta = ParseList<double>(k, v); }},
      {"trials", [&](auto& k, auto v) { c.trials = ParseScalar<int>(k, v); }},
      {"lower", [&](auto& k, auto v) { c.lower = ParseList<int>(k, v); }},
      {"upper", [&](auto& k, auto v) { c.upper = ParseList<int>(k, v); }},
      {"repeat_log_base",
       [&](auto& k, auto v) { c.repeat_log_base = ParseScalar<double>(k, v); }},
      {"wall_time", [&](auto& k, auto v) { c.wall_time = ParseBool(k, v); }},
      {"max_file_bytes",
       [&](auto& k, auto v) { c.max_file_bytes = ParseScalar<uint64_t>(k, v); }},

      {"synthetic.family",
       [&](auto&, auto v) { c.synthetic_family = std::string(Trim(v)); }},
      {"synthetic.n",
       [&](auto& k, auto v) { c.coverage.n = c.modular.n = ParseScalar<int>(k, v); }},
      {"synthetic.k",
       [&](auto& k, auto v) { c.coverage.k = c.modular.k = ParseScalar<int>(k, v); }},
      {"synthetic.universe",
       [&](auto& k, auto v) { c.coverage.universe = ParseScalar<int>(k, v); }},
      {"synthetic.density",
       [&](auto& k, auto v) { c.coverage.density = ParseScalar<double>(k, v); }},
      {"synthetic.weight_min",
       [&](auto& k, auto v) {
         c.coverage.weight_min = c.modular.weight_min = ParseScalar<double>(k, v);
       }},
      {"synthetic.weight_max",
       [&](auto& k, auto v) {
         c.coverage.weight_max = c.modular.weight_max = ParseScalar<double>(k, v);
       }},

      {"kic.graph", [&](auto&, auto v) { c.graph_path = ResolvePath(base_dir, v); }},
      {"kic.nodes", [&](auto& k, auto v) { c.kic_gen.nodes = ParseScalar<int>(k, v); }},
      {"kic.topics",
       [&](auto& k, auto v) { c.kic_gen.topics = ParseScalar<int>(k, v); }},
      {"kic.mean_out_degree",
       [&](auto& k, auto v) { c.kic_gen.mean_out_degree = ParseScalar<double>(k, v); }},
      {"kic.p_min", [&](auto& k, auto v) { c.kic_gen.p_min = ParseScalar<double>(k, v); }},
      {"kic.p_max", [&](auto& k, auto v) { c.kic_gen.p_max = ParseScalar<double>(k, v); }},
      {"kic.mc_samples",
       [&](auto& k, auto v) { c.mc_samples = ParseScalar<int>(k, v); }},
      {"kic.final_mc_samples",
       [&](auto& k, auto v) { c.final_mc_samples = ParseScalar<int>(k, v); }},

      {"entropy.readings",
       [&](auto&, auto v) { c.readings_path = ResolvePath(base_dir, v); }},
      {"entropy.bin_widths",
       [&](auto& k, auto v) { c.bin_widths = ParseList<double>(k, v); }},
      {"entropy.locations",
       [&](auto& k, auto v) { c.readings_gen.locations = ParseScalar<int>(k, v); }},
      {"entropy.measures",
       [&](auto& k, auto v) { c.readings_gen.measures = ParseScalar<int>(k, v); }},
      {"entropy.timestamps",
       [&](auto& k, auto v) { c.readings_gen.timestamps = ParseScalar<int>(k, v); }},
      {"entropy.missing_rate",
       [&](auto& k, auto v) {
         c.readings_gen.missing_rate = ParseScalar<double>(k, v);
       }},
  };

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const size_t hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;
    const size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      ConfigFail("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(Trim(view.substr(0, eq)));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      ConfigFail("line " + std::to_string(line_no) + ": unknown key \"" + key + "\"");
    }
    it->second(key, view.substr(eq + 1));
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::string text;
  try {
    text = ReadFileCapped(path, 1 << 20);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  return ParseConfig(text, std::filesystem::path(path).parent_path().string());
}

int RepeatCount(int n, double base) {
  if (n <= 1) return 1;
  // Guard against log(8)/log(2) landing a hair above 3.
  const double exact = std::log(static_cast<double>(n)) / std::log(base);
  const double rounded = std::round(exact);
  const double value = std::abs(exact - rounded) < 1e-9 ? rounded : std::ceil(exact);
  return std::max(1, static_cast<int>(value));
}

namespace {

// Oracles shared read-only by every combination of a sweep.
struct Workload {
  int n = 0;
  int k = 0;
  // Oracle the solvers query.
  std::unique_ptr<ValueOracle> search;
  // Oracle used to score final solutions. May alias `search`.
  ValueOracle* final = nullptr;
  std::unique_ptr<ValueOracle> final_owned;
};

Workload BuildWorkload(const ExperimentConfig& config) {
  Workload w;
  const uint64_t instance_seed = HashAll({config.seed, 0x1});
  switch (config.application) {
    case Application::kSynthetic: {
      if (config.synthetic_family == "coverage") {
        w.search = std::make_unique<CoverageOracle>(
            GenCoverageInstance(config.coverage, instance_seed));
      } else {
        w.search = std::make_unique<ModularOracle>(
            GenModularInstance(config.modular, instance_seed));
      }
      w.final = w.search.get();
      break;
    }
    case Application::kKic: {
      KicInstance inst = config.graph_path.empty()
                             ? GenKicInstance(config.kic_gen, instance_seed)
                             : LoadKicGraph(config.graph_path, config.max_file_bytes);
      w.final_owned = std::make_unique<KicSpreadOracle>(
          inst, config.final_mc_samples, HashAll({config.seed, 0x3}));
      w.search = std::make_unique<KicSpreadOracle>(std::move(inst), config.mc_samples,
                                                   HashAll({config.seed, 0x2}));
      w.final = w.final_owned.get();
      break;
    }
    case Application::kEntropy: {
      ReadingsTable table =
          config.readings_path.empty()
              ? Discretize(GenReadings(config.readings_gen, instance_seed),
                           config.bin_widths)
              : LoadReadings(config.readings_path, config.bin_widths,
                             config.max_file_bytes);
      w.search = std::make_unique<EntropyOracle>(std::move(table));
      w.final = w.search.get();
      break;
    }
  }
  w.n = w.search->n();
  w.k = w.search->k();
  return w;
}

std::vector<int> Broadcast(const std::vector<int>& values, int k, int fill,
                           const char* what) {
  if (values.empty()) return std::vector<int>(k, fill);
  if (values.size() == 1) return std::vector<int>(k, values[0]);
  if (static_cast<int>(values.size()) != k) {
    ConfigFail(std::string(what) + " lists " + std::to_string(values.size()) +
               " values but the instance has k=" + std::to_string(k));
  }
  return values;
}

int BiasAgainst(const KAssignment& s, const std::vector<int>& lower,
                const std::vector<int>& upper) {
  int err = 0;
  for (TypeId t = 1; t <= s.k(); ++t) {
    err = std::max({err, s.count(t) - upper[t - 1], lower[t - 1] - s.count(t)});
  }
  return err;
}

struct Combo {
  int budget;
  Algorithm algorithm;
  double eps;
  double delta;
};

uint64_t Bits(double x) { return std::bit_cast<uint64_t>(x); }

ResultRow RunCombo(const ExperimentConfig& config, const Workload& w,
                   const std::vector<int>& lower, const std::vector<int>& upper,
                   const Combo& combo) {
  ResultRow row;
  row.application = ApplicationName(config.application);
  row.algorithm = AlgorithmName(combo.algorithm);
  row.budget = combo.budget;
  row.eps = combo.eps;
  row.delta = combo.delta;

  auto skip = [&](const std::string& reason) {
    row.skipped = true;
    row.skip_reason = reason;
    return row;
  };

  std::optional<FairnessSpec> spec;
  try {
    switch (combo.algorithm) {
      case Algorithm::kFairGreedy:
      case Algorithm::kFairThreshold:
      case Algorithm::kRandomFair:
        spec.emplace(w.n, w.k, combo.budget, lower, upper);
        break;
      case Algorithm::kIsGreedy:
        spec = FairnessSpec::UpperOnly(w.n, w.k, combo.budget, upper);
        break;
      case Algorithm::kTsGreedy:
        if (combo.budget > w.n) return skip("budget exceeds n");
        break;
    }
  } catch (const Error& e) {
    return skip(e.what());
  }

  const int repeats = combo.delta > 0.0 ? RepeatCount(w.n, config.repeat_log_base) : 1;
  struct Run {
    double objective;
    int64_t evals;
    int bias;
    int64_t wall_ms;
  };
  std::vector<Run> runs;
  runs.reserve(repeats);
  for (int r = 0; r < repeats; ++r) {
    const uint64_t run_seed =
        HashAll({config.seed, static_cast<uint64_t>(combo.budget),
                 static_cast<uint64_t>(combo.algorithm), Bits(combo.eps),
                 Bits(combo.delta), static_cast<uint64_t>(r)});
    std::optional<ApproxOracle> noisy;
    ValueOracle* f = w.search.get();
    if (combo.delta > 0.0) {
      noisy.emplace(*w.search, combo.delta, run_seed);
      f = &*noisy;
    }
    const auto start = std::chrono::steady_clock::now();
    SolveResult result;
    double objective = 0.0;
    try {
      switch (combo.algorithm) {
        case Algorithm::kFairGreedy:
          result = FairGreedy(*f, *spec);
          break;
        case Algorithm::kFairThreshold:
          result = FairThreshold(*f, *spec, combo.eps);
          break;
        case Algorithm::kTsGreedy:
          result = TsGreedy(*f, w.n, w.k, combo.budget);
          break;
        case Algorithm::kIsGreedy:
          result = IsGreedy(*f, *spec);
          break;
        case Algorithm::kRandomFair:
          // Scored directly with the final oracle: the mean over trials is
          // the reported objective.
          result = RandomFair(*spec, run_seed, config.trials, *w.final);
          break;
      }
    } catch (const Error& e) {
      return skip(e.what());
    }
    const auto stop = std::chrono::steady_clock::now();
    objective = combo.algorithm == Algorithm::kRandomFair
                    ? result.value
                    : w.final->Evaluate(result.solution);
    const int64_t ms =
        config.wall_time
            ? std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
                  .count()
            : 0;
    runs.push_back({objective, result.oracle_evals,
                    BiasAgainst(result.solution, lower, upper), ms});
  }

  std::vector<int> order(runs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (runs[a].objective != runs[b].objective) {
      return runs[a].objective < runs[b].objective;
    }
    return a < b;
  });
  const int chosen = order[(order.size() - 1) / 2];
  row.run = chosen;
  row.objective = runs[chosen].objective;
  row.oracle_evals = runs[chosen].evals;
  row.bias_error = runs[chosen].bias;
  row.wall_ms = runs[chosen].wall_ms;
  return row;
}

}  // namespace

std::vector<ResultRow> RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const Workload workload = BuildWorkload(config);
  const std::vector<int> lower = Broadcast(config.lower, workload.k, 0, "lower");
  const std::vector<int> upper =
      Broadcast(config.upper, workload.k, workload.n, "upper");

  std::vector<Combo> combos;
  for (int budget : config.budgets) {
    for (Algorithm algorithm : config.algorithms) {
      const std::vector<double> eps_values =
          algorithm == Algorithm::kFairThreshold ? config.eps
                                                 : std::vector<double>{0.0};
      for (double eps : eps_values) {
        for (double delta : config.delta) {
          combos.push_back({budget, algorithm, eps, delta});
        }
      }
    }
  }

  std::vector<ResultRow> rows(combos.size());
  const bool parallel = config.jobs > 1 && workload.search->ConcurrentSafe() &&
                        workload.final->ConcurrentSafe();
  if (!parallel) {
    for (size_t i = 0; i < combos.size(); ++i) {
      rows[i] = RunCombo(config, workload, lower, upper, combos[i]);
    }
    return rows;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < combos.size(); i = next++) {
      rows[i] = RunCombo(config, workload, lower, upper, combos[i]);
    }
  };
  {
    std::vector<std::jthread> threads;
    for (int t = 0; t < config.jobs; ++t) threads.emplace_back(worker);
  }
  return rows;
}

std::string FormatCsv(const std::vector<ResultRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  char buf[512];
  for (const ResultRow& r : rows) {
    if (r.skipped) {
      std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.6f,%.6f,skip,,,,\n",
                    r.application.c_str(), r.algorithm.c_str(), r.budget, r.eps,
                    r.delta);
    } else {
      std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.6f,%.6f,%d,%.6f,%lld,%d,%lld\n",
                    r.application.c_str(), r.algorithm.c_str(), r.budget, r.eps,
                    r.delta, r.run, r.objective,
                    static_cast<long long>(r.oracle_evals), r.bias_error,
                    static_cast<long long>(r.wall_ms));
    }
    out += buf;
  }
  return out;
}

void WriteCsv(const std::vector<ResultRow>& rows, const std::string& path) {
  if (rows.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "no rows to write");
  }
  WriteFile(path, FormatCsv(rows));
}

}  // namespace fair_ksub
