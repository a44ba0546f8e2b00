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

#ifndef FAIR_KSUB_TESTS_TEST_UTIL_H_
#define FAIR_KSUB_TESTS_TEST_UTIL_H_

// Test-only helpers: independent enumerators and the random small-instance
// corpus used by the property and acceptance suites. Nothing here calls into
// the solver implementations.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fair_ksub/assignment.h"
#include "fair_ksub/fairness.h"
#include "fair_ksub/synthetic.h"

namespace fair_ksub::testing {

// Feasibility evaluated straight from label vectors.
inline bool FeasibleByDefinition(const std::vector<int>& labels, int k,
                                 int budget, const std::vector<int>& lower,
                                 const std::vector<int>& upper) {
  std::vector<int> counts(k, 0);
  int total = 0;
  for (int t : labels) {
    if (t) {
      ++counts[t - 1];
      ++total;
    }
  }
  if (total > budget) return false;
  for (int i = 0; i < k; ++i) {
    if (counts[i] < lower[i] || counts[i] > upper[i]) return false;
  }
  return true;
}

// Extendability from raw counts.
inline bool ExtendableByDefinition(const std::vector<int>& counts, int budget,
                                   const std::vector<int>& lower,
                                   const std::vector<int>& upper) {
  int committed = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > upper[i]) return false;
    committed += std::max(counts[i], lower[i]);
  }
  return committed <= budget;
}

// Calls fn(labels) for every vector in {0..k}^n.
inline void ForEachLabelVector(int n, int k,
                               const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> labels(n, 0);
  while (true) {
    fn(labels);
    int e = 0;
    while (e < n && labels[e] == k) labels[e++] = 0;
    if (e == n) return;
    ++labels[e];
  }
}

// Exhaustive optimum over the feasible family, via plain odometer
// enumeration. Independent of BruteForceOpt.
inline double EnumeratedOptimum(ValueOracle& f, const FairnessSpec& spec) {
  const std::vector<int> lower(spec.lower_bounds().begin(), spec.lower_bounds().end());
  const std::vector<int> upper(spec.upper_bounds().begin(), spec.upper_bounds().end());
  double best = -1e300;
  ForEachLabelVector(spec.n(), spec.k(), [&](const std::vector<int>& labels) {
    if (!FeasibleByDefinition(labels, spec.k(), spec.budget(), lower, upper)) return;
    best = std::max(best, f.Evaluate(KAssignment::FromLabels(spec.k(), labels)));
  });
  return best;
}

struct CorpusInstance {
  CoverageOracle oracle;
  FairnessSpec spec;
};

// Random small coverage instance with random feasible bounds:
// n in [3, 8], k in [1, 3], B in [1, min(4, n)], sum(lower) <= B <= sum(upper).
inline CorpusInstance MakeCorpusInstance(uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  auto uniform = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const int n = uniform(3, 8);
  const int k = uniform(1, 3);
  const int budget = uniform(1, std::min(4, n));
  std::vector<int> lower(k, 0);
  int remaining = budget;
  for (int i = 0; i < k; ++i) {
    lower[i] = uniform(0, std::min(remaining, 2));
    remaining -= lower[i];
  }
  std::vector<int> upper(k);
  int upper_sum = 0;
  for (int i = 0; i < k; ++i) {
    upper[i] = uniform(lower[i], std::min(n, lower[i] + 3));
    upper_sum += upper[i];
  }
  for (int i = 0; upper_sum < budget; i = (i + 1) % k) {
    if (upper[i] < n) {
      ++upper[i];
      ++upper_sum;
    }
  }
  CoverageParams params;
  params.n = n;
  params.k = k;
  params.universe = uniform(5, 15);
  params.density = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
  params.weight_min = 1.0;
  params.weight_max = 5.0;
  return {GenCoverageInstance(params, rng()),
          FairnessSpec(n, k, budget, lower, upper)};
}

}  // namespace fair_ksub::testing

#endif  // FAIR_KSUB_TESTS_TEST_UTIL_H_
