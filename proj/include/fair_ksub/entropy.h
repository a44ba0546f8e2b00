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

#ifndef FAIR_KSUB_ENTROPY_H_
#define FAIR_KSUB_ENTROPY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fair_ksub/kic.h"
#include "fair_ksub/value_oracle.h"

namespace fair_ksub {

inline constexpr int kMissingBin = -1;

// Raw sensor readings, one record per timestamp. values[r][loc * measures + m]
// is empty when the cell was not observed.
struct RawReadings {
  std::vector<std::string> measure_names;
  std::vector<std::string> location_labels;
  std::vector<std::string> timestamps;
  std::vector<std::vector<std::optional<double>>> values;

  int locations() const { return static_cast<int>(location_labels.size()); }
  int measures() const { return static_cast<int>(measure_names.size()); }
};

// Discretized readings. Raw value v of measure m lands in bin
// floor(v / width_m); bins are shifted by a per-measure offset so that the
// smallest observed bin is 0 when any reading is negative.
struct ReadingsTable {
  int locations = 0;
  int measures = 0;
  std::vector<double> bin_widths;
  std::vector<int> bin_offsets;
  std::vector<std::string> measure_names;
  std::vector<std::string> location_labels;
  // rows[r][loc * measures + m], kMissingBin when unobserved.
  std::vector<std::vector<int>> rows;

  int bin(size_t row, ElementId location, TypeId measure) const {
    return rows[row][static_cast<size_t>(location) * measures + (measure - 1)];
  }
};

ReadingsTable Discretize(const RawReadings& raw,
                         const std::vector<double>& bin_widths);

// CSV with header "timestamp,location,<measure-1>,...,<measure-k>". Empty
// cells are missing. Records sharing a timestamp form one row; locations and
// timestamps are indexed in order of first appearance.
RawReadings ParseReadingsCsv(const std::string& text);
std::string SerializeReadingsCsv(const RawReadings& raw);

ReadingsTable LoadReadings(const std::string& path,
                           const std::vector<double>& bin_widths,
                           uint64_t max_bytes = kDefaultMaxFileBytes);

struct ReadingsGenParams {
  int locations = 12;
  int measures = 3;
  int timestamps = 200;
  double missing_rate = 0.0;
};

// Synthetic lab-like readings: each measure follows a shared daily cycle,
// each location adds its own gain, offset and noise.
RawReadings GenReadings(const ReadingsGenParams& params, uint64_t seed);

// Joint Shannon entropy (bits) of the selected sensor variables. Assigning
// location e to measure i selects the variable X_e^i. Rows where any
// selected variable is missing are dropped.
class EntropyOracle : public ValueOracle {
 public:
  explicit EntropyOracle(ReadingsTable table);

  double Evaluate(const KAssignment& s) override;
  int n() const override { return table_.locations; }
  int k() const override { return table_.measures; }
  bool ConcurrentSafe() const override { return true; }
  bool Normalized() const override { return true; }
  std::string Name() const override { return "entropy"; }

  const ReadingsTable& table() const { return table_; }

 private:
  ReadingsTable table_;
};

double EntropyEval(const ReadingsTable& table, const KAssignment& s);

}  // namespace fair_ksub

#endif  // FAIR_KSUB_ENTROPY_H_
