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

#ifndef FAIR_KSUB_SOLVERS_H_
#define FAIR_KSUB_SOLVERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fair_ksub/assignment.h"
#include "fair_ksub/fairness.h"
#include "fair_ksub/value_oracle.h"

namespace fair_ksub {

enum class TraceEvent {
  kAccept,   // pair added to the solution
  kRequeue,  // threshold: gain too small, pushed back with a lower priority
  kDiscard,  // threshold: touch cap reached, dropped
};

struct TraceStep {
  int iteration = 0;  // number of pairs accepted before this step
  ElementTypePair pair;
  double gain = 0.0;
  // Threshold solvers: the priority the pair was popped with.
  double priority = 0.0;
  TraceEvent event = TraceEvent::kAccept;
};

struct SolveResult {
  KAssignment solution;
  // Oracle value of `solution` as seen by the solver's oracle.
  double value = 0.0;
  // Oracle calls consumed, including any f(empty) query.
  int64_t oracle_evals = 0;
  std::vector<TraceStep> trace;
};

struct SolverOptions {
  bool record_trace = false;
  // Worker threads for candidate scans. Only used when the oracle declares
  // ConcurrentSafe(); results are reduced in candidate order, so the output
  // does not depend on this value.
  int jobs = 1;
};

// Greedy over extendable pairs for exactly B rounds. 1/3-approximate for
// monotone k-submodular f; at most 1 + k n B oracle calls.
SolveResult FairGreedy(ValueOracle& f, const FairnessSpec& spec,
                       const SolverOptions& options = {});

// Number of times a pair may be re-evaluated before it is dropped:
// ceil(ln(B / (2 eps)) / eps), or 0 when B / (2 eps) <= 1.
int ThresholdTouchCap(int budget, double eps);

// Lazy threshold greedy with a max-priority queue of cached gains. A popped
// pair is accepted when its current gain is at least (1 - eps) times its
// cached priority. Every pair is evaluated at most 1 + cap times, so the
// call count is at most k n (1 + cap), plus one f(empty) query for
// oracles that are not Normalized(). May stop short of B when the queue
// runs dry.
SolveResult FairThreshold(ValueOracle& f, const FairnessSpec& spec, double eps,
                          const SolverOptions& options = {});

// Greedy with only the total-size cap B. Ignores type bounds.
SolveResult TsGreedy(ValueOracle& f, int n, int k, int budget,
                     const SolverOptions& options = {});

// Greedy under per-type upper bounds plus the total budget. The spec must
// carry no lower bounds (see FairnessSpec::UpperOnly / WithoutLowerBounds).
// Stops early if no pair can be added.
SolveResult IsGreedy(ValueOracle& f, const FairnessSpec& spec,
                     const SolverOptions& options = {});

// Uniformly random fair solutions: each trial fills every type up to its
// lower bound with random unassigned elements, then adds random extendable
// pairs until the budget is used. `value` is the mean of f over trials and
// `solution` is the last trial's.
SolveResult RandomFair(const FairnessSpec& spec, uint64_t seed, int trials,
                       ValueOracle& f);

struct BruteForceOptions {
  bool allow_large = false;
};

// Exact optimum by enumerating every feasible assignment. Ties go to the
// lexicographically smallest label vector. Refuses n > 14 or B > 6 unless
// allow_large is set.
SolveResult BruteForceOpt(ValueOracle& f, const FairnessSpec& spec,
                          const BruteForceOptions& options = {});

}  // namespace fair_ksub

#endif  // FAIR_KSUB_SOLVERS_H_
