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

#include "fair_ksub/synthetic.h"

#include <random>

#include "fair_ksub/error.h"

namespace fair_ksub {

CoverageOracle::CoverageOracle(
    std::vector<double> weights,
    std::vector<std::vector<std::vector<int>>> cover)
    : weights_(std::move(weights)), cover_(std::move(cover)) {
  if (cover_.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "coverage needs n >= 1");
  }
  k_ = static_cast<int>(cover_.front().size());
  if (k_ < 1) throw Error(ErrorCode::kInvalidParameter, "coverage needs k >= 1");
  for (const auto& per_type : cover_) {
    if (static_cast<int>(per_type.size()) != k_) {
      throw Error(ErrorCode::kInvalidParameter,
                  "coverage: every element needs k cover sets");
    }
    for (const auto& set : per_type) {
      for (int item : set) {
        if (item < 0 || item >= universe_size()) {
          throw Error(ErrorCode::kInvalidParameter,
                      "coverage: item " + std::to_string(item) +
                          " outside the universe");
        }
      }
    }
  }
  for (double w : weights_) {
    if (w < 0.0) {
      throw Error(ErrorCode::kInvalidParameter,
                  "coverage weights must be non-negative");
    }
  }
}

double CoverageOracle::Evaluate(const KAssignment& s) {
  CheckDimensions(*this, s);
  std::vector<char> covered(weights_.size(), 0);
  double total = 0.0;
  for (ElementId e = 0; e < s.n(); ++e) {
    const TypeId t = s.at(e);
    if (t == kUnassigned) continue;
    for (int item : cover_[e][t - 1]) {
      if (!covered[item]) {
        covered[item] = 1;
        total += weights_[item];
      }
    }
  }
  return total;
}

ModularOracle::ModularOracle(std::vector<std::vector<double>> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty() || weights_.front().empty()) {
    throw Error(ErrorCode::kInvalidParameter, "modular needs n, k >= 1");
  }
  k_ = static_cast<int>(weights_.front().size());
  for (const auto& row : weights_) {
    if (static_cast<int>(row.size()) != k_) {
      throw Error(ErrorCode::kInvalidParameter,
                  "modular: every element needs k weights");
    }
    for (double w : row) {
      if (w < 0.0) {
        throw Error(ErrorCode::kInvalidParameter,
                    "modular weights must be non-negative");
      }
    }
  }
}

double ModularOracle::Evaluate(const KAssignment& s) {
  CheckDimensions(*this, s);
  double total = 0.0;
  for (ElementId e = 0; e < s.n(); ++e) {
    if (s.at(e) != kUnassigned) total += weights_[e][s.at(e) - 1];
  }
  return total;
}

CoverageOracle GenCoverageInstance(const CoverageParams& params, uint64_t seed) {
  if (params.universe < 1 || params.n < 1 || params.k < 1) {
    throw Error(ErrorCode::kInvalidParameter,
                "coverage instance needs n, k, universe >= 1");
  }
  if (params.weight_min < 0.0 || params.weight_max < params.weight_min) {
    throw Error(ErrorCode::kInvalidParameter,
                "coverage weights need 0 <= min <= max");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> weights(params.universe);
  for (double& w : weights) {
    w = params.weight_min + (params.weight_max - params.weight_min) * unit(rng);
  }
  std::vector<std::vector<std::vector<int>>> cover(
      params.n, std::vector<std::vector<int>>(params.k));
  for (auto& per_type : cover) {
    for (auto& set : per_type) {
      for (int item = 0; item < params.universe; ++item) {
        if (unit(rng) < params.density) set.push_back(item);
      }
    }
  }
  return CoverageOracle(std::move(weights), std::move(cover));
}

ModularOracle GenModularInstance(const ModularParams& params, uint64_t seed) {
  if (params.n < 1 || params.k < 1 || params.weight_min < 0.0 ||
      params.weight_max < params.weight_min) {
    throw Error(ErrorCode::kInvalidParameter,
                "modular instance needs n, k >= 1 and 0 <= min <= max");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(params.weight_min,
                                                params.weight_max);
  std::vector<std::vector<double>> weights(params.n,
                                           std::vector<double>(params.k));
  for (auto& row : weights) {
    for (double& w : row) w = weight(rng);
  }
  return ModularOracle(std::move(weights));
}

}  // namespace fair_ksub
