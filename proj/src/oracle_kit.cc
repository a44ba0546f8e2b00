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

#include "fair_ksub/oracle_kit.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fair_ksub/error.h"
#include "fair_ksub/hashing.h"

namespace fair_ksub {

ApproxOracle::ApproxOracle(ValueOracle& inner, double delta, uint64_t seed,
                           NoiseMode mode)
    : inner_(inner), delta_(delta), seed_(seed), mode_(mode) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "delta must lie in [0, 1), got " + std::to_string(delta));
  }
}

double ApproxOracle::Evaluate(const KAssignment& s) {
  const double exact = inner_.Evaluate(s);
  if (delta_ == 0.0) return exact;
  uint64_t stream = HashCombine(seed_, s.Fingerprint());
  if (mode_ == NoiseMode::kRedraw) {
    stream = HashCombine(stream, draws_.fetch_add(1, std::memory_order_relaxed));
  }
  const double u = UnitFromBits(Mix64(stream));
  return exact * (1.0 + delta_ * (2.0 * u - 1.0));
}

std::string ApproxOracle::Name() const {
  return inner_.Name() + "~" + std::to_string(delta_);
}

ApproxOracle WrapApproximate(ValueOracle& f, double delta, uint64_t seed,
                             NoiseMode mode) {
  return ApproxOracle(f, delta, seed, mode);
}

std::string Counterexample::ToString() const {
  std::ostringstream out;
  out << "A=" << lower.ToString() << " B=" << upper.ToString()
      << " pair=" << fair_ksub::ToString(pair) << " values " << lower_value
      << " vs " << upper_value;
  return out.str();
}

namespace {

constexpr int kMaxCheckN = 8;
constexpr int kMaxCheckK = 3;

// Every assignment in (k+1)^V, indexed in base k+1 with element 0 as the
// least significant digit.
class AssignmentTable {
 public:
  AssignmentTable(ValueOracle& f, int n, int k) : n_(n), k_(k) {
    if (n > kMaxCheckN || k > kMaxCheckK || n < 0 || k < 1) {
      throw Error(ErrorCode::kInstanceTooLarge,
                  "exhaustive checks need n <= 8 and 1 <= k <= 3, got n=" +
                      std::to_string(n) + " k=" + std::to_string(k));
    }
    if (f.n() != n || f.k() != k) {
      throw Error(ErrorCode::kContractViolation,
                  "oracle dimensions do not match the requested check");
    }
    place_.resize(n);
    int64_t p = 1;
    for (int e = 0; e < n; ++e) {
      place_[e] = p;
      p *= (k + 1);
    }
    size_ = p;
    values_.resize(size_);
    for (int64_t idx = 0; idx < size_; ++idx) {
      values_[idx] = f.Evaluate(Decode(idx));
    }
  }

  int64_t size() const { return size_; }
  double value(int64_t idx) const { return values_[idx]; }
  int64_t place(int e) const { return place_[e]; }

  TypeId Label(int64_t idx, int e) const {
    return static_cast<TypeId>((idx / place_[e]) % (k_ + 1));
  }

  KAssignment Decode(int64_t idx) const {
    KAssignment s(n_, k_);
    for (int e = 0; e < n_; ++e) {
      const TypeId t = Label(idx, e);
      if (t != kUnassigned) s.Assign({e, t});
    }
    return s;
  }

 private:
  int n_;
  int k_;
  int64_t size_ = 0;
  std::vector<int64_t> place_;
  std::vector<double> values_;
};

bool Below(double a, double b, double tolerance) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return a < b - tolerance * scale;
}

}  // namespace

CheckResult CheckMonotone(ValueOracle& f, int n, int k, double tolerance) {
  AssignmentTable table(f, n, k);
  CheckResult result;
  for (int64_t idx = 0; idx < table.size(); ++idx) {
    for (int e = 0; e < n; ++e) {
      if (table.Label(idx, e) != kUnassigned) continue;
      for (TypeId t = 1; t <= k; ++t) {
        const int64_t next = idx + t * table.place(e);
        ++result.comparisons;
        if (Below(table.value(next), table.value(idx), tolerance)) {
          result.ok = false;
          result.counterexample = Counterexample{
              table.Decode(idx), table.Decode(next), {e, t},
              table.value(idx), table.value(next)};
          return result;
        }
      }
    }
  }
  return result;
}

CheckResult CheckKSubmodular(ValueOracle& f, int n, int k, double tolerance) {
  AssignmentTable table(f, n, k);
  CheckResult result;
  std::vector<int> support;
  for (int64_t upper = 0; upper < table.size(); ++upper) {
    support.clear();
    for (int e = 0; e < n; ++e) {
      if (table.Label(upper, e) != kUnassigned) support.push_back(e);
    }
    const int m = static_cast<int>(support.size());
    // Each subset of supp(upper), keeping the same labels, is a lower A.
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
      int64_t lower = 0;
      for (int j = 0; j < m; ++j) {
        if (mask & (1u << j)) {
          lower += table.Label(upper, support[j]) * table.place(support[j]);
        }
      }
      for (int e = 0; e < n; ++e) {
        if (table.Label(upper, e) != kUnassigned) continue;
        for (TypeId t = 1; t <= k; ++t) {
          const int64_t step = t * table.place(e);
          const double gain_lower = table.value(lower + step) - table.value(lower);
          const double gain_upper = table.value(upper + step) - table.value(upper);
          ++result.comparisons;
          if (Below(gain_lower, gain_upper, tolerance)) {
            result.ok = false;
            result.counterexample =
                Counterexample{table.Decode(lower), table.Decode(upper),
                               {e, t}, gain_lower, gain_upper};
            return result;
          }
        }
      }
    }
  }
  return result;
}

int BiasError(const KAssignment& s, const FairnessSpec& spec) {
  CheckDimensions(s, spec);
  int err = 0;
  for (TypeId t = 1; t <= spec.k(); ++t) {
    err = std::max({err, s.count(t) - spec.upper(t), spec.lower(t) - s.count(t)});
  }
  return err;
}

}  // namespace fair_ksub
