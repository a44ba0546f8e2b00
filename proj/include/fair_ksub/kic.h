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

#ifndef FAIR_KSUB_KIC_H_
#define FAIR_KSUB_KIC_H_

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "fair_ksub/value_oracle.h"

namespace fair_ksub {

struct KicEdge {
  int source = 0;
  int target = 0;
  std::vector<double> probabilities;  // one per topic
};

// Directed graph whose edges carry one activation probability per topic.
struct KicInstance {
  int node_count = 0;
  int topics = 0;
  std::vector<KicEdge> edges;

  // Throws kValidation on out-of-range endpoints, wrong probability count or
  // probabilities outside [0, 1].
  void Validate() const;
};

enum class RealizationMode {
  // Sample r always sees the same live-edge realization, so values of
  // different assignments are estimated on coupled draws and the estimate
  // is itself a monotone k-submodular function.
  kCommonRandomNumbers,
  // Every call draws fresh realizations.
  kIndependent,
};

struct SpreadEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Expected size of the union over topics of the nodes reached by an
// independent cascade run from supp_i(s) with topic-i probabilities,
// estimated by Monte Carlo. Ground set = nodes, types = topics.
class KicSpreadOracle : public ValueOracle {
 public:
  KicSpreadOracle(KicInstance instance, int mc_samples, uint64_t seed,
                  RealizationMode mode = RealizationMode::kCommonRandomNumbers,
                  int jobs = 1);

  double Evaluate(const KAssignment& s) override;
  SpreadEstimate Estimate(const KAssignment& s);

  int n() const override { return instance_.node_count; }
  int k() const override { return instance_.topics; }
  bool ConcurrentSafe() const override {
    return mode_ == RealizationMode::kCommonRandomNumbers;
  }
  bool Normalized() const override { return true; }
  std::string Name() const override { return "kic"; }

  int mc_samples() const { return mc_samples_; }
  const KicInstance& instance() const { return instance_; }

 private:
  struct Workspace;
  // Number of nodes reached in Monte Carlo sample `sample`.
  int SimulateSample(const std::vector<std::vector<int>>& seeds,
                     uint64_t stream, int sample, Workspace& ws) const;

  KicInstance instance_;
  int mc_samples_;
  uint64_t seed_;
  RealizationMode mode_;
  int jobs_;
  // CSR adjacency: out-edges of node v are edge ids adj_[offset_[v]..].
  std::vector<int> offset_;
  std::vector<int> adj_;
  std::atomic<uint64_t> calls_{0};
};

// Convenience wrapper around KicSpreadOracle::Evaluate.
double KicSpread(const KicInstance& instance, const KAssignment& s,
                 int mc_samples, uint64_t seed);

struct KicGenParams {
  int nodes = 200;
  int topics = 3;
  double mean_out_degree = 4.0;
  double p_min = 0.0;
  double p_max = 0.1;
};

// Random directed graph: each node gets a Poisson-ish number of distinct
// out-neighbours, each edge independent uniform probabilities per topic.
KicInstance GenKicInstance(const KicGenParams& params, uint64_t seed);

inline constexpr uint64_t kDefaultMaxFileBytes = 256ull << 20;

// Text format: a header line "n k", then one line per edge
// "src dst p_1 ... p_k". Blank lines and lines starting with '#' are
// skipped.
KicInstance LoadKicGraph(const std::string& path,
                         uint64_t max_bytes = kDefaultMaxFileBytes);
KicInstance ParseKicGraph(const std::string& text);
std::string SerializeKicGraph(const KicInstance& instance);
void WriteKicGraph(const KicInstance& instance, const std::string& path);

}  // namespace fair_ksub

#endif  // FAIR_KSUB_KIC_H_
