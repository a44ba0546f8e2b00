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

#ifndef FAIR_KSUB_FAIRNESS_H_
#define FAIR_KSUB_FAIRNESS_H_

#include <span>
#include <string>
#include <vector>

#include "fair_ksub/assignment.h"

namespace fair_ksub {

// Total budget B plus per-type count bounds [lower_i, upper_i].
//
// The regular constructor enforces the standing assumptions of the fair
// problem: sum(lower) <= B (otherwise no fair solution exists) and
// sum(upper) >= B (otherwise the instance is an individual-size problem and
// should go to IsGreedy with a spec from UpperOnly()).
class FairnessSpec {
 public:
  FairnessSpec(int n, int k, int budget, std::vector<int> lower,
               std::vector<int> upper);

  // Individual-size constraint: lower bounds are zero and sum(upper) < B is
  // allowed.
  static FairnessSpec UpperOnly(int n, int k, int budget,
                                std::vector<int> upper);

  // Same bounds with every lower bound replaced by zero.
  FairnessSpec WithoutLowerBounds() const;

  int n() const { return n_; }
  int k() const { return k_; }
  int budget() const { return budget_; }
  // Bounds for a 1-based type.
  int lower(TypeId type) const { return lower_[type - 1]; }
  int upper(TypeId type) const { return upper_[type - 1]; }
  std::span<const int> lower_bounds() const { return lower_; }
  std::span<const int> upper_bounds() const { return upper_; }

  bool HasLowerBounds() const;

  std::string ToString() const;

 private:
  struct Unchecked {};
  FairnessSpec(Unchecked, int n, int k, int budget, std::vector<int> lower,
               std::vector<int> upper);
  void ValidateShape() const;

  int n_;
  int k_;
  int budget_;
  std::vector<int> lower_;
  std::vector<int> upper_;
};

// lower_i <= |supp_i(s)| <= upper_i for all i and |supp(s)| <= B.
bool IsFeasible(const KAssignment& s, const FairnessSpec& spec);

// s can still be completed into a fair solution: counts within the upper
// bounds and sum_i max(count_i, lower_i) <= B.
bool IsExtendable(const KAssignment& s, const FairnessSpec& spec);

// Types i for which s + (e, i) stays extendable, independent of e. Requires
// s itself to be extendable for the result to be meaningful.
std::vector<TypeId> ExtendableTypes(const KAssignment& s,
                                    const FairnessSpec& spec);

// Whether s + (., type) stays extendable.
bool CanExtendWithType(const KAssignment& s, const FairnessSpec& spec,
                       TypeId type);

// Every (e, i) with e unassigned and s + (e, i) extendable, ordered by element
// then type. Ties in every solver are broken by this order.
std::vector<ElementTypePair> FeasiblePairs(const KAssignment& s,
                                           const FairnessSpec& spec);

// Throws kContractViolation when s and spec disagree on n or k.
void CheckDimensions(const KAssignment& s, const FairnessSpec& spec);

}  // namespace fair_ksub

#endif  // FAIR_KSUB_FAIRNESS_H_
