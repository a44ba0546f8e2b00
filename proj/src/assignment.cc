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

#include "fair_ksub/assignment.h"

#include <sstream>

#include "fair_ksub/error.h"
#include "fair_ksub/hashing.h"

namespace fair_ksub {

std::string ToString(const ElementTypePair& pair) {
  return "(" + std::to_string(pair.element) + "," + std::to_string(pair.type) +
         ")";
}

KAssignment::KAssignment(int n, int k) {
  if (n < 0 || k < 1) {
    throw Error(ErrorCode::kContractViolation,
                "assignment needs n >= 0 and k >= 1, got n=" +
                    std::to_string(n) + " k=" + std::to_string(k));
  }
  labels_.assign(n, kUnassigned);
  counts_.assign(k, 0);
}

KAssignment KAssignment::FromLabels(int k, std::span<const TypeId> labels) {
  KAssignment s(static_cast<int>(labels.size()), k);
  for (int e = 0; e < s.n(); ++e) {
    if (labels[e] != kUnassigned) s.Assign({e, labels[e]});
  }
  return s;
}

void KAssignment::Assign(const ElementTypePair& pair) {
  if (pair.element < 0 || pair.element >= n() || pair.type < 1 ||
      pair.type > k()) {
    throw Error(ErrorCode::kContractViolation,
                "pair " + fair_ksub::ToString(pair) + " out of range for n=" +
                    std::to_string(n()) + " k=" + std::to_string(k()));
  }
  if (labels_[pair.element] != kUnassigned) {
    throw Error(ErrorCode::kContractViolation,
                "element " + std::to_string(pair.element) +
                    " is already assigned type " +
                    std::to_string(labels_[pair.element]));
  }
  labels_[pair.element] = pair.type;
  ++counts_[pair.type - 1];
  ++total_;
}

void KAssignment::Unassign(ElementId e) {
  if (e < 0 || e >= n() || labels_[e] == kUnassigned) {
    throw Error(ErrorCode::kContractViolation,
                "element " + std::to_string(e) + " is not assigned");
  }
  --counts_[labels_[e] - 1];
  --total_;
  labels_[e] = kUnassigned;
}

std::vector<ElementTypePair> KAssignment::Pairs() const {
  std::vector<ElementTypePair> pairs;
  pairs.reserve(total_);
  for (int e = 0; e < n(); ++e) {
    if (labels_[e] != kUnassigned) pairs.push_back({e, labels_[e]});
  }
  return pairs;
}

std::vector<ElementId> KAssignment::Support(TypeId type) const {
  std::vector<ElementId> out;
  for (int e = 0; e < n(); ++e) {
    if (labels_[e] == type) out.push_back(e);
  }
  return out;
}

uint64_t KAssignment::Fingerprint() const {
  uint64_t h = HashAll({static_cast<uint64_t>(n()), static_cast<uint64_t>(k())});
  for (TypeId t : labels_) h = HashCombine(h, static_cast<uint64_t>(t));
  return h;
}

std::string KAssignment::ToString() const {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& p : Pairs()) {
    if (!first) out << ",";
    out << fair_ksub::ToString(p);
    first = false;
  }
  out << "}";
  return out.str();
}

KAssignment Apply(const KAssignment& s, const ElementTypePair& pair) {
  KAssignment out = s;
  out.Assign(pair);
  return out;
}

bool IsDominatedBy(const KAssignment& a, const KAssignment& b) {
  if (a.n() != b.n() || a.k() != b.k()) return false;
  for (int e = 0; e < a.n(); ++e) {
    if (a.at(e) != kUnassigned && a.at(e) != b.at(e)) return false;
  }
  return true;
}

}  // namespace fair_ksub
