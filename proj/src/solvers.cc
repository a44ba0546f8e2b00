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

#include "fair_ksub/solvers.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <span>
#include <thread>

#include "fair_ksub/error.h"
#include "fair_ksub/oracle_kit.h"

namespace fair_ksub {
namespace {

void CheckOracleMatchesSpec(const ValueOracle& f, const FairnessSpec& spec) {
  if (f.n() != spec.n() || f.k() != spec.k()) {
    throw Error(ErrorCode::kContractViolation,
                f.Name() + " has n=" + std::to_string(f.n()) +
                    " k=" + std::to_string(f.k()) + " but spec has " +
                    spec.ToString());
  }
}

// f(s + p) for every candidate p, in candidate order.
std::vector<double> ScanCandidates(ValueOracle& f, const KAssignment& s,
                                   std::span<const ElementTypePair> pairs,
                                   int jobs) {
  std::vector<double> values(pairs.size());
  auto scan = [&](size_t begin, size_t end) {
    KAssignment scratch = s;
    for (size_t i = begin; i < end; ++i) {
      scratch.Assign(pairs[i]);
      values[i] = f.Evaluate(scratch);
      scratch.Unassign(pairs[i].element);
    }
  };
  const size_t workers = static_cast<size_t>(std::max(jobs, 1));
  if (workers == 1 || !f.ConcurrentSafe() || pairs.size() < 2 * workers) {
    scan(0, pairs.size());
    return values;
  }
  const size_t chunk = (pairs.size() + workers - 1) / workers;
  std::vector<std::jthread> threads;
  for (size_t begin = 0; begin < pairs.size(); begin += chunk) {
    threads.emplace_back(scan, begin, std::min(pairs.size(), begin + chunk));
  }
  threads.clear();  // joins
  return values;
}

template <typename CandidateFn>
SolveResult RunGreedy(ValueOracle& f, int n, int k, int rounds,
                      CandidateFn candidates, bool stop_when_exhausted,
                      const SolverOptions& options, const std::string& name) {
  CountingOracle counted(f);
  KAssignment s(n, k);
  double value = f.Normalized() ? 0.0 : counted.Evaluate(s);
  SolveResult result;
  for (int j = 0; j < rounds; ++j) {
    const std::vector<ElementTypePair> pairs = candidates(s);
    if (pairs.empty()) {
      if (stop_when_exhausted) break;
      throw Error(ErrorCode::kInfeasible,
                  name + ": no extendable pair at iteration " +
                      std::to_string(j + 1) + " of " + std::to_string(rounds));
    }
    const std::vector<double> values =
        ScanCandidates(counted, s, pairs, options.jobs);
    size_t best = 0;
    for (size_t i = 1; i < values.size(); ++i) {
      if (values[i] > values[best]) best = i;
    }
    if (options.record_trace) {
      result.trace.push_back({j, pairs[best], values[best] - value, 0.0,
                              TraceEvent::kAccept});
    }
    s.Assign(pairs[best]);
    value = values[best];
  }
  result.solution = std::move(s);
  result.value = value;
  result.oracle_evals = counted.evals();
  return result;
}

}  // namespace

SolveResult FairGreedy(ValueOracle& f, const FairnessSpec& spec,
                       const SolverOptions& options) {
  CheckOracleMatchesSpec(f, spec);
  return RunGreedy(
      f, spec.n(), spec.k(), spec.budget(),
      [&spec](const KAssignment& s) { return FeasiblePairs(s, spec); },
      /*stop_when_exhausted=*/false, options, "fair-greedy");
}

SolveResult TsGreedy(ValueOracle& f, int n, int k, int budget,
                     const SolverOptions& options) {
  if (f.n() != n || f.k() != k) {
    throw Error(ErrorCode::kContractViolation,
                "ts-greedy: oracle dimensions do not match n, k");
  }
  if (budget < 0 || budget > n) {
    throw Error(ErrorCode::kInvalidParameter,
                "ts-greedy needs 0 <= B <= n, got B=" + std::to_string(budget) +
                    " n=" + std::to_string(n));
  }
  return RunGreedy(
      f, n, k, budget,
      [k](const KAssignment& s) {
        std::vector<ElementTypePair> pairs;
        for (ElementId e = 0; e < s.n(); ++e) {
          if (s.IsAssigned(e)) continue;
          for (TypeId t = 1; t <= k; ++t) pairs.push_back({e, t});
        }
        return pairs;
      },
      /*stop_when_exhausted=*/false, options, "ts-greedy");
}

SolveResult IsGreedy(ValueOracle& f, const FairnessSpec& spec,
                     const SolverOptions& options) {
  CheckOracleMatchesSpec(f, spec);
  if (spec.HasLowerBounds()) {
    throw Error(ErrorCode::kInvalidParameter,
                "is-greedy takes upper bounds only; got lower bounds in " +
                    spec.ToString());
  }
  return RunGreedy(
      f, spec.n(), spec.k(), spec.budget(),
      [&spec](const KAssignment& s) { return FeasiblePairs(s, spec); },
      /*stop_when_exhausted=*/true, options, "is-greedy");
}

int ThresholdTouchCap(int budget, double eps) {
  const double ratio = static_cast<double>(budget) / (2.0 * eps);
  if (ratio <= 1.0) return 0;
  return static_cast<int>(std::ceil(std::log(ratio) / eps));
}

SolveResult FairThreshold(ValueOracle& f, const FairnessSpec& spec, double eps,
                          const SolverOptions& options) {
  CheckOracleMatchesSpec(f, spec);
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "eps must lie in (0, 1), got " + std::to_string(eps));
  }
  const int cap = ThresholdTouchCap(spec.budget(), eps);

  struct Entry {
    double priority;  // gain measured when the entry was made
    double value;     // f(s + pair) at that time
    ElementTypePair pair;
    int touches;  // evaluations spent on this pair, initial one included
    int stamp;    // solution size when the gain was measured
  };
  // Max-heap on priority; equal priorities pop in candidate order.
  auto lower_priority = [](const Entry& a, const Entry& b) {
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.pair > b.pair;
  };

  CountingOracle counted(f);
  KAssignment s(spec.n(), spec.k());
  double value = f.Normalized() ? 0.0 : counted.Evaluate(s);

  std::vector<Entry> initial;
  initial.reserve(static_cast<size_t>(spec.n()) * spec.k());
  {
    std::vector<ElementTypePair> all;
    for (ElementId e = 0; e < spec.n(); ++e) {
      for (TypeId t = 1; t <= spec.k(); ++t) all.push_back({e, t});
    }
    const std::vector<double> singles =
        ScanCandidates(counted, s, all, options.jobs);
    for (size_t i = 0; i < all.size(); ++i) {
      initial.push_back(
          {std::max(singles[i] - value, 0.0), singles[i], all[i], 1, 0});
    }
  }
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)>
      queue(lower_priority, std::move(initial));

  SolveResult result;
  int accepted = 0;
  while (accepted < spec.budget()) {
    while (!queue.empty()) {
      const Entry& top = queue.top();
      if (!s.IsAssigned(top.pair.element) &&
          CanExtendWithType(s, spec, top.pair.type)) {
        break;
      }
      queue.pop();
    }
    if (queue.empty()) break;

    Entry entry = queue.top();
    queue.pop();

    // An entry measured against the current solution already holds the
    // exact gain.
    const bool fresh = entry.stamp == accepted;
    // Gains never grow back from zero, so a zero-priority pair is taken as
    // is without another query.
    const bool settled = entry.priority <= 0.0;
    double value_after = fresh ? entry.value : value;
    if (!fresh && !settled) {
      KAssignment next = Apply(s, entry.pair);
      value_after = counted.Evaluate(next);
      ++entry.touches;
    }
    // Gains of a monotone f are non-negative; roundoff or oracle noise can
    // leave a saturated gain slightly off zero, where it would never pass
    // the test.
    double gain = value_after - value;
    if (gain <= 1e-12 * std::max(1.0, std::abs(value))) gain = 0.0;

    if (gain >= (1.0 - eps) * entry.priority) {
      if (options.record_trace) {
        result.trace.push_back(
            {accepted, entry.pair, gain, entry.priority, TraceEvent::kAccept});
      }
      s.Assign(entry.pair);
      value = value_after;
      ++accepted;
      continue;
    }

    if (fresh) ++entry.touches;
    const bool keep = entry.touches <= cap || gain == 0.0;
    if (options.record_trace) {
      result.trace.push_back({accepted, entry.pair, gain, entry.priority,
                              keep ? TraceEvent::kRequeue
                                   : TraceEvent::kDiscard});
    }
    if (keep) {
      entry.priority = gain;
      entry.value = value_after;
      entry.stamp = accepted;
      queue.push(entry);
    }
  }

  result.solution = std::move(s);
  result.value = value;
  result.oracle_evals = counted.evals();
  return result;
}

SolveResult RandomFair(const FairnessSpec& spec, uint64_t seed, int trials,
                       ValueOracle& f) {
  CheckOracleMatchesSpec(f, spec);
  if (trials < 1) {
    throw Error(ErrorCode::kInvalidParameter,
                "random-fair needs at least one trial");
  }
  if (spec.n() < spec.budget()) {
    throw Error(ErrorCode::kInfeasible,
                "random-fair needs n >= B, got n=" + std::to_string(spec.n()) +
                    " B=" + std::to_string(spec.budget()));
  }
  CountingOracle counted(f);
  std::mt19937_64 rng(seed);
  auto pick = [&rng](size_t size) {
    return std::uniform_int_distribution<size_t>(0, size - 1)(rng);
  };

  SolveResult result;
  double sum = 0.0;
  std::vector<ElementId> free;
  for (int trial = 0; trial < trials; ++trial) {
    KAssignment s(spec.n(), spec.k());
    for (TypeId t = 1; t <= spec.k(); ++t) {
      for (int c = 0; c < spec.lower(t); ++c) {
        free.clear();
        for (ElementId e = 0; e < s.n(); ++e) {
          if (!s.IsAssigned(e)) free.push_back(e);
        }
        s.Assign({free[pick(free.size())], t});
      }
    }
    while (s.total() < spec.budget()) {
      const std::vector<ElementTypePair> pairs = FeasiblePairs(s, spec);
      if (pairs.empty()) {
        throw Error(ErrorCode::kInfeasible,
                    "random-fair: no extendable pair with " +
                        std::to_string(s.total()) + " of " +
                        std::to_string(spec.budget()) + " placed");
      }
      s.Assign(pairs[pick(pairs.size())]);
    }
    sum += counted.Evaluate(s);
    result.solution = std::move(s);
  }
  result.value = sum / trials;
  result.oracle_evals = counted.evals();
  return result;
}

SolveResult BruteForceOpt(ValueOracle& f, const FairnessSpec& spec,
                          const BruteForceOptions& options) {
  CheckOracleMatchesSpec(f, spec);
  if (!options.allow_large && (spec.n() > 14 || spec.budget() > 6)) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "brute force is limited to n <= 14 and B <= 6 (got " +
                    spec.ToString() + "); set allow_large to override");
  }
  CountingOracle counted(f);
  const int n = spec.n();
  const int k = spec.k();
  KAssignment s(n, k);
  bool found = false;
  SolveResult result;

  // Lower-bound deficit that the remaining elements still have to cover.
  auto deficit = [&]() {
    int d = 0;
    for (TypeId t = 1; t <= k; ++t) d += std::max(0, spec.lower(t) - s.count(t));
    return d;
  };

  auto visit = [&](auto&& self, ElementId e) -> void {
    if (!IsExtendable(s, spec) || deficit() > n - e) return;
    if (e == n) {
      if (!IsFeasible(s, spec)) return;
      const double v = counted.Evaluate(s);
      if (!found || v > result.value) {
        found = true;
        result.value = v;
        result.solution = s;
      }
      return;
    }
    self(self, e + 1);
    for (TypeId t = 1; t <= k; ++t) {
      if (s.total() >= spec.budget()) break;
      s.Assign({e, t});
      self(self, e + 1);
      s.Unassign(e);
    }
  };
  visit(visit, 0);

  if (!found) {
    throw Error(ErrorCode::kInfeasible,
                "no feasible assignment for " + spec.ToString());
  }
  result.oracle_evals = counted.evals();
  return result;
}

}  // namespace fair_ksub
