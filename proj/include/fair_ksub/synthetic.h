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

#ifndef FAIR_KSUB_SYNTHETIC_H_
#define FAIR_KSUB_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fair_ksub/value_oracle.h"

namespace fair_ksub {

// Weighted coverage: every pair (e, i) covers a subset of a weighted
// universe and f(s) is the weight of the union over the pairs in s.
// Monotone and k-submodular; the deterministic special case of k-IC spread.
class CoverageOracle : public ValueOracle {
 public:
  // cover[e][i - 1] lists the universe items covered by (e, i).
  CoverageOracle(std::vector<double> weights,
                 std::vector<std::vector<std::vector<int>>> cover);

  double Evaluate(const KAssignment& s) override;
  int n() const override { return static_cast<int>(cover_.size()); }
  int k() const override { return k_; }
  bool ConcurrentSafe() const override { return true; }
  bool Normalized() const override { return true; }
  std::string Name() const override { return "coverage"; }

  int universe_size() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& CoverSet(ElementId e, TypeId type) const {
    return cover_[e][type - 1];
  }

 private:
  std::vector<double> weights_;
  std::vector<std::vector<std::vector<int>>> cover_;
  int k_;
};

// f(s) = sum over assigned e of weight(e, s(e)).
class ModularOracle : public ValueOracle {
 public:
  // weights[e][i - 1]
  explicit ModularOracle(std::vector<std::vector<double>> weights);

  double Evaluate(const KAssignment& s) override;
  int n() const override { return static_cast<int>(weights_.size()); }
  int k() const override { return k_; }
  bool ConcurrentSafe() const override { return true; }
  bool Normalized() const override { return true; }
  std::string Name() const override { return "modular"; }

  double weight(ElementId e, TypeId type) const {
    return weights_[e][type - 1];
  }

 private:
  std::vector<std::vector<double>> weights_;
  int k_;
};

struct CoverageParams {
  int n = 6;
  int k = 2;
  int universe = 10;
  double density = 0.3;
  double weight_min = 1.0;
  double weight_max = 1.0;
};

struct ModularParams {
  int n = 6;
  int k = 2;
  double weight_min = 0.0;
  double weight_max = 10.0;
};

// Each (e, i) covers each universe item independently with probability
// `density`; item weights are uniform in [weight_min, weight_max].
CoverageOracle GenCoverageInstance(const CoverageParams& params, uint64_t seed);

ModularOracle GenModularInstance(const ModularParams& params, uint64_t seed);

}  // namespace fair_ksub

#endif  // FAIR_KSUB_SYNTHETIC_H_
