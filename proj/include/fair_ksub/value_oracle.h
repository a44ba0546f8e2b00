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

#ifndef FAIR_KSUB_VALUE_ORACLE_H_
#define FAIR_KSUB_VALUE_ORACLE_H_

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "fair_ksub/assignment.h"

namespace fair_ksub {

// Value oracle for a set function f : (k+1)^V -> R.
//
// Implementations may hold internal state (graphs, histograms, counters).
// Two declarations tell solvers what they may assume:
//   ConcurrentSafe()  Evaluate may be called from several threads at once.
//   Normalized()      f(empty) == 0, so solvers need not query it.
class ValueOracle {
 public:
  virtual ~ValueOracle() = default;

  virtual double Evaluate(const KAssignment& s) = 0;

  virtual int n() const = 0;
  virtual int k() const = 0;

  virtual bool ConcurrentSafe() const { return false; }
  virtual bool Normalized() const { return false; }

  virtual std::string Name() const { return "oracle"; }
};

// Adapts a callable. Mostly for tests and one-off objectives.
class FunctionOracle : public ValueOracle {
 public:
  using Fn = std::function<double(const KAssignment&)>;

  FunctionOracle(int n, int k, Fn fn, bool normalized = false,
                 std::string name = "function")
      : n_(n),
        k_(k),
        fn_(std::move(fn)),
        normalized_(normalized),
        name_(std::move(name)) {}

  double Evaluate(const KAssignment& s) override { return fn_(s); }
  int n() const override { return n_; }
  int k() const override { return k_; }
  bool Normalized() const override { return normalized_; }
  std::string Name() const override { return name_; }

 private:
  int n_;
  int k_;
  Fn fn_;
  bool normalized_;
  std::string name_;
};

// f(s + (e, i)) - f(s). Uses `value_at_s` instead of querying f(s) when the
// caller already has it, so the cost is one or two evaluations.
double MarginalGain(ValueOracle& f, const KAssignment& s,
                    const ElementTypePair& pair,
                    std::optional<double> value_at_s = std::nullopt);

// Throws kContractViolation when s does not match the oracle's n and k.
void CheckDimensions(const ValueOracle& f, const KAssignment& s);

}  // namespace fair_ksub

#endif  // FAIR_KSUB_VALUE_ORACLE_H_
