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

#include "fair_ksub/value_oracle.h"

#include "fair_ksub/error.h"

namespace fair_ksub {

void CheckDimensions(const ValueOracle& f, const KAssignment& s) {
  if (s.n() != f.n() || s.k() != f.k()) {
    throw Error(ErrorCode::kContractViolation,
                f.Name() + " expects n=" + std::to_string(f.n()) +
                    " k=" + std::to_string(f.k()) + ", got n=" +
                    std::to_string(s.n()) + " k=" + std::to_string(s.k()));
  }
}

double MarginalGain(ValueOracle& f, const KAssignment& s,
                    const ElementTypePair& pair,
                    std::optional<double> value_at_s) {
  KAssignment next = Apply(s, pair);
  const double base = value_at_s ? *value_at_s : f.Evaluate(s);
  return f.Evaluate(next) - base;
}

}  // namespace fair_ksub
