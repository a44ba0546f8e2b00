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

#ifndef FAIR_KSUB_ORACLE_KIT_H_
#define FAIR_KSUB_ORACLE_KIT_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>

#include "fair_ksub/assignment.h"
#include "fair_ksub/fairness.h"
#include "fair_ksub/value_oracle.h"

namespace fair_ksub {

// Counts Evaluate calls and forwards them unchanged. Holds a reference; the
// inner oracle must outlive the wrapper.
class CountingOracle : public ValueOracle {
 public:
  explicit CountingOracle(ValueOracle& inner) : inner_(inner) {}

  double Evaluate(const KAssignment& s) override {
    evals_.fetch_add(1, std::memory_order_relaxed);
    return inner_.Evaluate(s);
  }

  int64_t evals() const { return evals_.load(std::memory_order_relaxed); }
  void Reset() { evals_.store(0, std::memory_order_relaxed); }

  int n() const override { return inner_.n(); }
  int k() const override { return inner_.k(); }
  bool ConcurrentSafe() const override { return inner_.ConcurrentSafe(); }
  bool Normalized() const override { return inner_.Normalized(); }
  std::string Name() const override { return inner_.Name(); }

 private:
  ValueOracle& inner_;
  std::atomic<int64_t> evals_{0};
};

inline CountingOracle WrapCounting(ValueOracle& f) { return CountingOracle(f); }

enum class NoiseMode {
  // One perturbation per distinct assignment: the wrapper is a fixed
  // function f~ with (1-d) f <= f~ <= (1+d) f.
  kMemoized,
  // Fresh perturbation on every call.
  kRedraw,
};

// delta-approximate surrogate of an exact oracle. Each value is drawn
// uniformly from [(1-delta) f(s), (1+delta) f(s)]; in memoized mode the draw
// is a pure function of (seed, s).
class ApproxOracle : public ValueOracle {
 public:
  ApproxOracle(ValueOracle& inner, double delta, uint64_t seed,
               NoiseMode mode = NoiseMode::kMemoized);

  double Evaluate(const KAssignment& s) override;

  double delta() const { return delta_; }
  int n() const override { return inner_.n(); }
  int k() const override { return inner_.k(); }
  bool ConcurrentSafe() const override {
    return mode_ == NoiseMode::kMemoized && inner_.ConcurrentSafe();
  }
  bool Normalized() const override { return inner_.Normalized(); }
  std::string Name() const override;

 private:
  ValueOracle& inner_;
  double delta_;
  uint64_t seed_;
  NoiseMode mode_;
  std::atomic<uint64_t> draws_{0};
};

ApproxOracle WrapApproximate(ValueOracle& f, double delta, uint64_t seed,
                             NoiseMode mode = NoiseMode::kMemoized);

// Witness for a failed property check. For monotonicity `lower` is s and
// `upper` is s + pair, with values f(lower) and f(upper). For
// k-submodularity `lower` <= `upper` and the values are the two marginal
// gains of `pair`.
struct Counterexample {
  KAssignment lower;
  KAssignment upper;
  ElementTypePair pair;
  double lower_value = 0.0;
  double upper_value = 0.0;

  std::string ToString() const;
};

struct CheckResult {
  bool ok = true;
  std::optional<Counterexample> counterexample;
  int64_t comparisons = 0;

  explicit operator bool() const { return ok; }
};

// Exhaustive check over all (k+1)^n assignments. Guarded to n <= 8, k <= 3.
CheckResult CheckMonotone(ValueOracle& f, int n, int k,
                          double tolerance = 1e-9);

// Exhaustive check of diminishing returns for every A <= B and every
// (e, i) with e outside supp(B). Same guard as CheckMonotone.
CheckResult CheckKSubmodular(ValueOracle& f, int n, int k,
                             double tolerance = 1e-9);

// max_i max(count_i - upper_i, lower_i - count_i, 0). Zero iff every type
// count is within its bounds.
int BiasError(const KAssignment& s, const FairnessSpec& spec);

}  // namespace fair_ksub

#endif  // FAIR_KSUB_ORACLE_KIT_H_
