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

#include "fair_ksub/fairness.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fair_ksub/error.h"

namespace fair_ksub {
namespace {

int Sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

// sum_i max(count_i, lower_i): the number of slots s is already committed to.
int CommittedSlots(const KAssignment& s, const FairnessSpec& spec) {
  int committed = 0;
  for (TypeId t = 1; t <= spec.k(); ++t) {
    committed += std::max(s.count(t), spec.lower(t));
  }
  return committed;
}

}  // namespace

FairnessSpec::FairnessSpec(Unchecked, int n, int k, int budget,
                           std::vector<int> lower, std::vector<int> upper)
    : n_(n),
      k_(k),
      budget_(budget),
      lower_(std::move(lower)),
      upper_(std::move(upper)) {
  ValidateShape();
}

FairnessSpec::FairnessSpec(int n, int k, int budget, std::vector<int> lower,
                           std::vector<int> upper)
    : FairnessSpec(Unchecked{}, n, k, budget, std::move(lower),
                   std::move(upper)) {
  if (Sum(lower_) > budget_) {
    throw Error(ErrorCode::kLowerSumExceedsBudget,
                "sum of lower bounds " + std::to_string(Sum(lower_)) +
                    " exceeds budget " + std::to_string(budget_) +
                    "; no fair solution exists");
  }
  if (Sum(upper_) < budget_) {
    throw Error(ErrorCode::kUpperSumBelowBudget,
                "sum of upper bounds " + std::to_string(Sum(upper_)) +
                    " is below budget " + std::to_string(budget_) +
                    "; this is an individual-size problem, use IS-greedy "
                    "with FairnessSpec::UpperOnly");
  }
}

FairnessSpec FairnessSpec::UpperOnly(int n, int k, int budget,
                                     std::vector<int> upper) {
  return FairnessSpec(Unchecked{}, n, k, budget, std::vector<int>(k, 0),
                      std::move(upper));
}

FairnessSpec FairnessSpec::WithoutLowerBounds() const {
  return FairnessSpec(Unchecked{}, n_, k_, budget_, std::vector<int>(k_, 0),
                      upper_);
}

void FairnessSpec::ValidateShape() const {
  if (n_ < 0 || k_ < 1 || budget_ < 0) {
    throw Error(ErrorCode::kInvalidBounds,
                "need n >= 0, k >= 1, B >= 0; got n=" + std::to_string(n_) +
                    " k=" + std::to_string(k_) +
                    " B=" + std::to_string(budget_));
  }
  if (static_cast<int>(lower_.size()) != k_ ||
      static_cast<int>(upper_.size()) != k_) {
    throw Error(ErrorCode::kInvalidBounds,
                "expected " + std::to_string(k_) + " lower and upper bounds");
  }
  for (int i = 0; i < k_; ++i) {
    if (lower_[i] < 0 || lower_[i] > upper_[i] || upper_[i] > n_) {
      throw Error(ErrorCode::kInvalidBounds,
                  "type " + std::to_string(i + 1) + " needs 0 <= lower (" +
                      std::to_string(lower_[i]) + ") <= upper (" +
                      std::to_string(upper_[i]) + ") <= n (" +
                      std::to_string(n_) + ")");
    }
  }
}

bool FairnessSpec::HasLowerBounds() const {
  return std::any_of(lower_.begin(), lower_.end(), [](int l) { return l > 0; });
}

std::string FairnessSpec::ToString() const {
  std::ostringstream out;
  out << "n=" << n_ << " k=" << k_ << " B=" << budget_ << " bounds=[";
  for (int i = 0; i < k_; ++i) {
    if (i) out << " ";
    out << lower_[i] << ".." << upper_[i];
  }
  out << "]";
  return out.str();
}

void CheckDimensions(const KAssignment& s, const FairnessSpec& spec) {
  if (s.n() != spec.n() || s.k() != spec.k()) {
    throw Error(ErrorCode::kContractViolation,
                "assignment has n=" + std::to_string(s.n()) +
                    " k=" + std::to_string(s.k()) + " but spec has n=" +
                    std::to_string(spec.n()) + " k=" + std::to_string(spec.k()));
  }
}

bool IsFeasible(const KAssignment& s, const FairnessSpec& spec) {
  CheckDimensions(s, spec);
  if (s.total() > spec.budget()) return false;
  for (TypeId t = 1; t <= spec.k(); ++t) {
    if (s.count(t) < spec.lower(t) || s.count(t) > spec.upper(t)) return false;
  }
  return true;
}

bool IsExtendable(const KAssignment& s, const FairnessSpec& spec) {
  CheckDimensions(s, spec);
  for (TypeId t = 1; t <= spec.k(); ++t) {
    if (s.count(t) > spec.upper(t)) return false;
  }
  return CommittedSlots(s, spec) <= spec.budget();
}

bool CanExtendWithType(const KAssignment& s, const FairnessSpec& spec,
                       TypeId type) {
  if (s.count(type) + 1 > spec.upper(type)) return false;
  // Adding one of `type` only raises the committed total when the type is
  // already at or above its lower bound.
  const int extra = s.count(type) >= spec.lower(type) ? 1 : 0;
  return CommittedSlots(s, spec) + extra <= spec.budget();
}

std::vector<TypeId> ExtendableTypes(const KAssignment& s,
                                    const FairnessSpec& spec) {
  CheckDimensions(s, spec);
  std::vector<TypeId> types;
  for (TypeId t = 1; t <= spec.k(); ++t) {
    if (CanExtendWithType(s, spec, t)) types.push_back(t);
  }
  return types;
}

std::vector<ElementTypePair> FeasiblePairs(const KAssignment& s,
                                           const FairnessSpec& spec) {
  const std::vector<TypeId> types = ExtendableTypes(s, spec);
  std::vector<ElementTypePair> pairs;
  if (types.empty()) return pairs;
  pairs.reserve(static_cast<size_t>(s.n() - s.total()) * types.size());
  for (ElementId e = 0; e < s.n(); ++e) {
    if (s.IsAssigned(e)) continue;
    for (TypeId t : types) pairs.push_back({e, t});
  }
  return pairs;
}

}  // namespace fair_ksub
