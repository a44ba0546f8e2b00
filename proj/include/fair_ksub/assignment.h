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

#ifndef FAIR_KSUB_ASSIGNMENT_H_
#define FAIR_KSUB_ASSIGNMENT_H_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fair_ksub {

// Element of the ground set, 0-based.
using ElementId = int;
// Type label, 1-based. 0 is reserved for "unassigned".
using TypeId = int;

inline constexpr TypeId kUnassigned = 0;

struct ElementTypePair {
  ElementId element = 0;
  TypeId type = 1;

  friend auto operator<=>(const ElementTypePair&,
                          const ElementTypePair&) = default;
};

std::string ToString(const ElementTypePair& pair);

// A partial solution s in (k+1)^V: each element is mapped to one of k types
// or left unassigned. Per-type counts are cached so that fairness checks are
// O(k) and Assign/Unassign are O(1).
class KAssignment {
 public:
  KAssignment() = default;
  KAssignment(int n, int k);

  // Builds from a dense vector of labels in {0..k}.
  static KAssignment FromLabels(int k, std::span<const TypeId> labels);

  int n() const { return static_cast<int>(labels_.size()); }
  int k() const { return static_cast<int>(counts_.size()); }

  TypeId at(ElementId e) const { return labels_[e]; }
  bool IsAssigned(ElementId e) const { return labels_[e] != kUnassigned; }

  // |supp_i(s)| for a 1-based type.
  int count(TypeId type) const { return counts_[type - 1]; }
  std::span<const int> counts() const { return counts_; }
  int total() const { return total_; }
  bool empty() const { return total_ == 0; }

  std::span<const TypeId> labels() const { return labels_; }

  // Mutating s(e) <- i. Throws kContractViolation if e is already assigned
  // or the pair is out of range.
  void Assign(const ElementTypePair& pair);
  // Inverse of Assign. Throws if e is unassigned.
  void Unassign(ElementId e);

  // All assigned pairs, element ascending.
  std::vector<ElementTypePair> Pairs() const;

  // Elements assigned to the given type, ascending.
  std::vector<ElementId> Support(TypeId type) const;

  // Stable 64-bit fingerprint of the labels (and n, k).
  uint64_t Fingerprint() const;

  std::string ToString() const;

  friend bool operator==(const KAssignment&, const KAssignment&) = default;

 private:
  std::vector<TypeId> labels_;
  std::vector<int> counts_;
  int total_ = 0;
};

// s + I_(e,i) as a new value.
KAssignment Apply(const KAssignment& s, const ElementTypePair& pair);

// A <= B in the partial order: every assigned element of A carries the same
// type in B.
bool IsDominatedBy(const KAssignment& a, const KAssignment& b);

}  // namespace fair_ksub

#endif  // FAIR_KSUB_ASSIGNMENT_H_
