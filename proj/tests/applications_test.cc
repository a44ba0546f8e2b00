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

#include <cmath>
#include <deque>
#include <string>
#include <vector>

#include "fair_ksub/entropy.h"
#include "fair_ksub/error.h"
#include "fair_ksub/kic.h"
#include "fair_ksub/oracle_kit.h"
#include "fair_ksub/synthetic.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fair_ksub {
namespace {

std::string DataPath(const std::string& name) {
  return std::string(FAIR_KSUB_TEST_DATA) + "/" + name;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kContractViolation;
}

// Nodes reachable from `sources` over edges whose topic probability is 1.
int ReachableOverCertainEdges(const KicInstance& g, TypeId topic,
                              const std::vector<int>& sources) {
  std::vector<bool> seen(g.node_count, false);
  std::deque<int> queue;
  for (int v : sources) {
    if (!seen[v]) queue.push_back(v);
    seen[v] = true;
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const KicEdge& e : g.edges) {
      if (e.source == v && e.probabilities[topic - 1] == 1.0 && !seen[e.target]) {
        seen[e.target] = true;
        queue.push_back(e.target);
      }
    }
  }
  int count = 0;
  for (bool b : seen) count += b;
  return count;
}

TEST(KicSpreadTest, EmptyAssignmentIsZero) {
  const KicInstance g = LoadKicGraph(DataPath("graph_20node.txt"));
  EXPECT_EQ(KicSpread(g, KAssignment(20, 2), 100, 1), 0.0);
}

TEST(KicSpreadTest, CertainChainReachesEveryNode) {
  const KicInstance g = LoadKicGraph(DataPath("graph_chain.txt"));
  EXPECT_DOUBLE_EQ(KicSpread(g, Apply(KAssignment(3, 1), {0, 1}), 50, 3), 3.0);
}

TEST(KicSpreadTest, SingleEdgeHalfProbability) {
  const KicInstance g = LoadKicGraph(DataPath("graph_2node.txt"));
  KicSpreadOracle f(g, 10000, 42);
  const SpreadEstimate est = f.Estimate(Apply(KAssignment(2, 1), {0, 1}));
  EXPECT_NEAR(est.mean, 1.5, 3.0 * est.std_error);
  EXPECT_GT(est.std_error, 0.0);
}

TEST(KicSpreadTest, StandardErrorShrinksLikeInverseRoot) {
  const KicInstance g = LoadKicGraph(DataPath("graph_2node.txt"));
  const KAssignment s = Apply(KAssignment(2, 1), {0, 1});
  std::vector<double> se;
  for (int samples : {100, 1600, 25600}) {
    KicSpreadOracle f(g, samples, 7);
    se.push_back(f.Estimate(s).std_error);
  }
  // Each step multiplies the sample count by 16: SE should drop about 4x.
  EXPECT_NEAR(se[0] / se[1], 4.0, 1.0);
  EXPECT_NEAR(se[1] / se[2], 4.0, 1.0);
}

TEST(KicSpreadTest, DeterministicProbabilitiesMatchBfs) {
  KicInstance g = GenKicInstance({30, 2, 2.0, 0.0, 1.0}, 5);
  for (KicEdge& e : g.edges) {
    for (double& p : e.probabilities) p = p < 0.5 ? 0.0 : 1.0;
  }
  KicSpreadOracle f(g, 20, 1);
  for (int src = 0; src < 30; src += 7) {
    for (TypeId topic : {1, 2}) {
      const KAssignment s = Apply(KAssignment(30, 2), {src, topic});
      ASSERT_DOUBLE_EQ(f.Evaluate(s), ReachableOverCertainEdges(g, topic, {src}));
    }
  }
}

TEST(KicSpreadTest, CommonRandomNumbersAreMonotone) {
  const KicInstance g = LoadKicGraph(DataPath("graph_20node.txt"));
  KicSpreadOracle f(g, 200, 9);
  KAssignment s(20, 2);
  double prev = f.Evaluate(s);
  for (ElementId e : {3, 8, 11, 0, 17}) {
    s.Assign({e, 1 + e % 2});
    const double v = f.Evaluate(s);
    ASSERT_GE(v, prev);
    prev = v;
  }
}

TEST(KicSpreadTest, SmallInstanceIsKSubmodularUnderCommonRandomNumbers) {
  KicInstance g = GenKicInstance({6, 2, 2.0, 0.1, 0.6}, 13);
  KicSpreadOracle f(g, 64, 2);
  EXPECT_TRUE(CheckMonotone(f, 6, 2).ok);
  EXPECT_TRUE(CheckKSubmodular(f, 6, 2).ok);
}

TEST(KicSpreadTest, ResultDoesNotDependOnJobs) {
  const KicInstance g = LoadKicGraph(DataPath("graph_20node.txt"));
  KicSpreadOracle serial(g, 500, 4, RealizationMode::kCommonRandomNumbers, 1);
  KicSpreadOracle parallel(g, 500, 4, RealizationMode::kCommonRandomNumbers, 4);
  KAssignment s(20, 2);
  s.Assign({2, 1});
  s.Assign({9, 2});
  EXPECT_EQ(serial.Evaluate(s), parallel.Evaluate(s));
}

TEST(KicGraphTest, LoadsFixture) {
  const KicInstance g = LoadKicGraph(DataPath("graph_2node.txt"));
  EXPECT_EQ(g.node_count, 2);
  EXPECT_EQ(g.topics, 1);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].probabilities[0], 0.5);
}

TEST(KicGraphTest, WrongProbabilityCountIsParseError) {
  EXPECT_EQ(CodeOf([] { LoadKicGraph(DataPath("graph_bad_probs.txt")); }),
            ErrorCode::kParse);
}

TEST(KicGraphTest, ValidationErrors) {
  EXPECT_EQ(CodeOf([] { ParseKicGraph("2 1\n0 1 1.5\n"); }), ErrorCode::kValidation);
  EXPECT_EQ(CodeOf([] { ParseKicGraph("2 1\n0 2 0.5\n"); }), ErrorCode::kValidation);
  EXPECT_EQ(CodeOf([] { ParseKicGraph("# only a comment\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseKicGraph("2 1\n0 x 0.5\n"); }), ErrorCode::kParse);
}

TEST(KicGraphTest, RoundTripIsExact) {
  const KicInstance g = LoadKicGraph(DataPath("graph_20node.txt"));
  const KicInstance back = ParseKicGraph(SerializeKicGraph(g));
  ASSERT_EQ(back.node_count, g.node_count);
  ASSERT_EQ(back.topics, g.topics);
  ASSERT_EQ(back.edges.size(), g.edges.size());
  for (size_t i = 0; i < g.edges.size(); ++i) {
    EXPECT_EQ(back.edges[i].source, g.edges[i].source);
    EXPECT_EQ(back.edges[i].target, g.edges[i].target);
    EXPECT_EQ(back.edges[i].probabilities, g.edges[i].probabilities);
  }
  const KicInstance gen = GenKicInstance({50, 3, 3.0, 0.0, 0.3}, 1);
  EXPECT_EQ(SerializeKicGraph(ParseKicGraph(SerializeKicGraph(gen))),
            SerializeKicGraph(gen));
}

TEST(KicGraphTest, SizeCapRejectsLargeFile) {
  EXPECT_EQ(CodeOf([] { LoadKicGraph(DataPath("graph_20node.txt"), 16); }),
            ErrorCode::kValidation);
  EXPECT_EQ(CodeOf([] { LoadKicGraph(DataPath("no_such_file.txt")); }),
            ErrorCode::kIo);
}

ReadingsTable SingleColumn(const std::vector<int>& bins) {
  RawReadings raw;
  raw.measure_names = {"m"};
  raw.location_labels = {"L"};
  for (size_t r = 0; r < bins.size(); ++r) {
    raw.timestamps.push_back("t" + std::to_string(r));
    raw.values.push_back({static_cast<double>(bins[r])});
  }
  return Discretize(raw, {1.0});
}

TEST(EntropyTest, UniformFourBinsIsTwoBits) {
  const ReadingsTable t = LoadReadings(DataPath("readings_uniform4.csv"), {2.0});
  EXPECT_NEAR(EntropyEval(t, Apply(KAssignment(1, 1), {0, 1})), 2.0, 1e-9);
  EXPECT_EQ(EntropyEval(t, KAssignment(1, 1)), 0.0);
}

TEST(EntropyTest, KnownDistribution) {
  // p = (1/2, 1/4, 1/4): H = 1.5 bits.
  const ReadingsTable t = SingleColumn({0, 0, 1, 2});
  EXPECT_NEAR(EntropyEval(t, Apply(KAssignment(1, 1), {0, 1})), 1.5, 1e-12);
}

TEST(EntropyTest, IndependentBinaryColumnsAddUp) {
  RawReadings raw;
  raw.measure_names = {"m"};
  raw.location_labels = {"A", "B"};
  raw.timestamps = {"0", "1", "2", "3"};
  raw.values = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
  const ReadingsTable t = Discretize(raw, {1.0});
  KAssignment s(2, 1);
  s.Assign({0, 1});
  EXPECT_NEAR(EntropyEval(t, s), 1.0, 1e-12);
  s.Assign({1, 1});
  EXPECT_NEAR(EntropyEval(t, s), 2.0, 1e-12);
}

TEST(EntropyTest, DuplicatedColumnAddsNothing) {
  RawReadings raw;
  raw.measure_names = {"m"};
  raw.location_labels = {"A", "B"};
  raw.timestamps = {"0", "1", "2", "3", "4"};
  raw.values = {{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {2.0, 2.0}, {3.0, 3.0}};
  const ReadingsTable t = Discretize(raw, {1.0});
  const double single = EntropyEval(t, Apply(KAssignment(2, 1), {0, 1}));
  KAssignment both(2, 1);
  both.Assign({0, 1});
  both.Assign({1, 1});
  EXPECT_NEAR(EntropyEval(t, both), single, 1e-12);
}

TEST(EntropyTest, MonotoneAndKSubmodularOnGeneratedReadings) {
  const ReadingsTable t = Discretize(GenReadings({4, 2, 120, 0.0}, 3), {2.0, 5.0});
  EntropyOracle f(t);
  EXPECT_TRUE(CheckMonotone(f, 4, 2).ok);
  EXPECT_TRUE(CheckKSubmodular(f, 4, 2).ok);
}

TEST(EntropyTest, AllRowsDroppedIsDegenerate) {
  RawReadings raw;
  raw.measure_names = {"m"};
  raw.location_labels = {"A", "B"};
  raw.timestamps = {"0", "1"};
  raw.values = {{1.0, std::nullopt}, {2.0, std::nullopt}};
  const ReadingsTable t = Discretize(raw, {1.0});
  EXPECT_GT(EntropyEval(t, Apply(KAssignment(2, 1), {0, 1})), 0.0);
  EXPECT_EQ(CodeOf([&] { EntropyEval(t, Apply(KAssignment(2, 1), {1, 1})); }),
            ErrorCode::kDegenerateData);
}

TEST(ReadingsTest, BinsAndNegativeOffsets) {
  const ReadingsTable t =
      LoadReadings(DataPath("readings_negative.csv"), {2.0, 10.0});
  ASSERT_EQ(t.locations, 2);
  ASSERT_EQ(t.measures, 2);
  ASSERT_EQ(t.rows.size(), 2u);
  // temp: floor(-3.5 / 2) = -2 is the smallest bin, so the offset is 2.
  EXPECT_EQ(t.bin_offsets[0], 2);
  EXPECT_EQ(t.bin(0, 0, 1), 0);
  EXPECT_EQ(t.bin(0, 1, 1), 10 + 2);  // 21.7 with width 2
  EXPECT_EQ(t.bin_offsets[1], 0);
  EXPECT_EQ(t.bin(0, 1, 2), kMissingBin);
  EXPECT_EQ(t.bin(1, 0, 2), 4);
}

TEST(ReadingsTest, PlainBinIndex) {
  RawReadings raw;
  raw.measure_names = {"temp"};
  raw.location_labels = {"A"};
  raw.timestamps = {"0"};
  raw.values = {{21.7}};
  EXPECT_EQ(Discretize(raw, {2.0}).bin(0, 0, 1), 10);
}

TEST(ReadingsTest, ErrorCodes) {
  EXPECT_EQ(CodeOf([] { LoadReadings(DataPath("readings_empty.csv"), {1.0}); }),
            ErrorCode::kDegenerateData);
  EXPECT_EQ(CodeOf([] { LoadReadings(DataPath("readings_bad.csv"), {1.0}); }),
            ErrorCode::kParse);
  try {
    LoadReadings(DataPath("readings_bad.csv"), {1.0});
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(CodeOf([] { LoadReadings(DataPath("readings_uniform4.csv"), {0.0}); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { LoadReadings(DataPath("readings_uniform4.csv"), {1.0, 1.0}); }),
            ErrorCode::kInvalidParameter);
}

TEST(ReadingsTest, CsvRoundTrip) {
  const RawReadings raw = GenReadings({3, 2, 10, 0.2}, 8);
  const RawReadings back = ParseReadingsCsv(SerializeReadingsCsv(raw));
  EXPECT_EQ(back.measure_names, raw.measure_names);
  EXPECT_EQ(back.location_labels, raw.location_labels);
  EXPECT_EQ(back.timestamps, raw.timestamps);
  EXPECT_EQ(back.values, raw.values);
}

TEST(GeneratorTest, CoverageDensityExtremes) {
  CoverageOracle empty = GenCoverageInstance({5, 2, 10, 0.0, 1.0, 2.0}, 1);
  CoverageOracle full = GenCoverageInstance({5, 2, 10, 1.0, 1.0, 1.0}, 1);
  const KAssignment s = Apply(KAssignment(5, 2), {3, 2});
  EXPECT_EQ(empty.Evaluate(s), 0.0);
  EXPECT_DOUBLE_EQ(full.Evaluate(s), 10.0);
}

TEST(GeneratorTest, CoverageIsKSubmodular) {
  CoverageOracle f = GenCoverageInstance({6, 2, 10, 0.3, 1.0, 5.0}, 4);
  EXPECT_TRUE(CheckKSubmodular(f, 6, 2).ok);
}

TEST(GeneratorTest, SameSeedSameInstance) {
  CoverageOracle a = GenCoverageInstance({6, 2, 10, 0.3, 1.0, 5.0}, 4);
  CoverageOracle b = GenCoverageInstance({6, 2, 10, 0.3, 1.0, 5.0}, 4);
  testing::ForEachLabelVector(6, 2, [&](const std::vector<int>& labels) {
    const KAssignment s = KAssignment::FromLabels(2, labels);
    ASSERT_EQ(a.Evaluate(s), b.Evaluate(s));
  });
}

}  // namespace
}  // namespace fair_ksub
