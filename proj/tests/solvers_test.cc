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
#include <vector>

#include "fair_ksub/error.h"
#include "fair_ksub/oracle_kit.h"
#include "fair_ksub/solvers.h"
#include "fair_ksub/synthetic.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fair_ksub {
namespace {

// a = (5, 1), b = (4, 2), c = (1, 3); B = 2, lower = (0, 1), upper = (2, 1).
ModularOracle ThreeElementOracle() {
  return ModularOracle({{5.0, 1.0}, {4.0, 2.0}, {1.0, 3.0}});
}
FairnessSpec ThreeElementSpec() { return FairnessSpec(3, 2, 2, {0, 1}, {2, 1}); }

std::vector<TypeId> LabelsOf(const KAssignment& s) {
  return {s.labels().begin(), s.labels().end()};
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

TEST(FairGreedyTest, ThreeElementExample) {
  ModularOracle f = ThreeElementOracle();
  const SolveResult r = FairGreedy(f, ThreeElementSpec());
  EXPECT_EQ(LabelsOf(r.solution), (std::vector<TypeId>{1, 0, 2}));
  EXPECT_DOUBLE_EQ(r.value, 8.0);
  EXPECT_EQ(BiasError(r.solution, ThreeElementSpec()), 0);
}

TEST(FairThresholdTest, ThreeElementExample) {
  ModularOracle f = ThreeElementOracle();
  const SolveResult r = FairThreshold(f, ThreeElementSpec(), 0.1);
  EXPECT_EQ(LabelsOf(r.solution), (std::vector<TypeId>{1, 0, 2}));
  EXPECT_DOUBLE_EQ(r.value, 8.0);
}

TEST(TsGreedyTest, ThreeElementExampleIsBiased) {
  ModularOracle f = ThreeElementOracle();
  const SolveResult r = TsGreedy(f, 3, 2, 2);
  EXPECT_EQ(LabelsOf(r.solution), (std::vector<TypeId>{1, 1, 0}));
  EXPECT_DOUBLE_EQ(r.value, 9.0);
  EXPECT_EQ(BiasError(r.solution, ThreeElementSpec()), 1);
}

TEST(IsGreedyTest, ThreeElementExampleIgnoresLowerBounds) {
  ModularOracle f = ThreeElementOracle();
  const SolveResult r = IsGreedy(f, ThreeElementSpec().WithoutLowerBounds());
  EXPECT_DOUBLE_EQ(r.value, 9.0);
}

TEST(FairGreedyTest, SingleElement) {
  ModularOracle f({{2.0, 7.0}});
  const SolveResult r = FairGreedy(f, FairnessSpec(1, 2, 1, {0, 0}, {1, 1}));
  EXPECT_EQ(r.solution.at(0), 2);
  EXPECT_DOUBLE_EQ(r.value, 7.0);
  // A lower bound forces the worse type.
  const SolveResult forced = FairGreedy(f, FairnessSpec(1, 2, 1, {1, 0}, {1, 1}));
  EXPECT_EQ(forced.solution.at(0), 1);
  const SolveResult thr = FairThreshold(f, FairnessSpec(1, 2, 1, {1, 0}, {1, 1}), 0.5);
  EXPECT_EQ(thr.solution.at(0), 1);
}

TEST(FairGreedyTest, ExactQuotaIsMet) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    CoverageOracle f = GenCoverageInstance({10, 3, 20, 0.3, 1.0, 5.0}, seed);
    const FairnessSpec spec(10, 3, 6, {2, 1, 3}, {2, 1, 3});
    for (const SolveResult& r : {FairGreedy(f, spec), FairThreshold(f, spec, 0.2)}) {
      ASSERT_EQ(r.solution.count(1), 2);
      ASSERT_EQ(r.solution.count(2), 1);
      ASSERT_EQ(r.solution.count(3), 3);
    }
  }
}

TEST(FairGreedyTest, OracleCallBound) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    testing::CorpusInstance inst = testing::MakeCorpusInstance(seed);
    CountingOracle counted(inst.oracle);
    const SolveResult r = FairGreedy(counted, inst.spec);
    const int64_t bound = 2LL * inst.spec.k() * inst.spec.n() * inst.spec.budget();
    ASSERT_LE(r.oracle_evals, bound);
    ASSERT_EQ(r.oracle_evals, counted.evals());
  }
}

TEST(FairGreedyTest, MeetsOneThirdOfOptimumOnCorpus) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    testing::CorpusInstance inst = testing::MakeCorpusInstance(seed);
    const double opt = testing::EnumeratedOptimum(inst.oracle, inst.spec);
    const SolveResult r = FairGreedy(inst.oracle, inst.spec);
    ASSERT_TRUE(IsFeasible(r.solution, inst.spec)) << seed;
    ASSERT_GE(r.value, opt / 3.0 - 1e-9) << seed;
    ASSERT_LE(r.value, opt + 1e-9) << seed;
  }
}

// Binding upper bounds break exactness of greedy even for modular f:
// x = (10, 9), y = (9, 0), upper = (1, 1), B = 2. Greedy takes (x, 1) then
// is forced to (y, 2); the optimum is (x, 2), (y, 1).
TEST(FairGreedyTest, NotExactOnModularWithBindingUpperBounds) {
  ModularOracle f({{10.0, 9.0}, {9.0, 0.0}});
  const FairnessSpec spec(2, 2, 2, {0, 0}, {1, 1});
  EXPECT_DOUBLE_EQ(FairGreedy(f, spec).value, 10.0);
  EXPECT_DOUBLE_EQ(BruteForceOpt(f, spec).value, 18.0);
}

TEST(FairGreedyTest, ExactOnModularWithSlackBounds) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ModularOracle f = GenModularInstance({7, 3, 0.0, 10.0}, seed);
    const FairnessSpec spec(7, 3, 4, {0, 0, 0}, {4, 4, 4});
    ASSERT_NEAR(FairGreedy(f, spec).value, BruteForceOpt(f, spec).value, 1e-9);
  }
}

TEST(FairGreedyTest, ParallelScanMatchesSerial) {
  CoverageOracle f = GenCoverageInstance({40, 3, 60, 0.1, 1.0, 5.0}, 8);
  const FairnessSpec spec(40, 3, 10, {2, 2, 2}, {5, 5, 5});
  const SolveResult serial = FairGreedy(f, spec);
  const SolveResult parallel = FairGreedy(f, spec, {.jobs = 4});
  EXPECT_EQ(serial.solution, parallel.solution);
  EXPECT_EQ(serial.oracle_evals, parallel.oracle_evals);
}

TEST(FairGreedyTest, Deterministic) {
  testing::CorpusInstance inst = testing::MakeCorpusInstance(5);
  EXPECT_EQ(FairGreedy(inst.oracle, inst.spec).solution,
            FairGreedy(inst.oracle, inst.spec).solution);
}

TEST(FairGreedyTest, DimensionMismatchThrows) {
  ModularOracle f({{1.0, 0.0}, {1.0, 0.0}});
  EXPECT_EQ(CodeOf([] { FairnessSpec(2, 2, 3, {0, 3}, {3, 3}); }),
            ErrorCode::kInvalidBounds);
  EXPECT_EQ(CodeOf([&] { FairGreedy(f, FairnessSpec(3, 2, 1, {0, 0}, {1, 1})); }),
            ErrorCode::kContractViolation);
}

TEST(ThresholdTouchCapTest, Values) {
  EXPECT_EQ(ThresholdTouchCap(1, 0.5), 0);
  EXPECT_EQ(ThresholdTouchCap(2, 0.5), 2);   // ceil(1.386)
  EXPECT_EQ(ThresholdTouchCap(10, 0.1), 40);  // ceil(39.12)
  EXPECT_EQ(ThresholdTouchCap(100, 0.5), 10);  // ceil(9.21)
}

TEST(FairThresholdTest, RejectsBadEps) {
  ModularOracle f = ThreeElementOracle();
  for (double eps : {0.0, -0.1, 1.0, std::nan("")}) {
    EXPECT_EQ(CodeOf([&] { FairThreshold(f, ThreeElementSpec(), eps); }),
              ErrorCode::kInvalidParameter)
        << eps;
  }
  EXPECT_NO_THROW(FairThreshold(f, ThreeElementSpec(), 0.5));
}

TEST(FairThresholdTest, MatchesGreedyOnModular) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ModularOracle f = GenModularInstance({8, 3, 0.0, 10.0}, seed);
    const FairnessSpec spec(8, 3, 5, {1, 1, 0}, {3, 2, 4});
    ASSERT_NEAR(FairThreshold(f, spec, 0.1).value, FairGreedy(f, spec).value, 1e-9);
  }
}

TEST(FairThresholdTest, RatioAndCallBoundOnCorpus) {
  for (double eps : {0.1, 0.3, 0.5}) {
    for (uint64_t seed = 0; seed < 60; ++seed) {
      testing::CorpusInstance inst = testing::MakeCorpusInstance(seed);
      const double opt = testing::EnumeratedOptimum(inst.oracle, inst.spec);
      CountingOracle counted(inst.oracle);
      const SolveResult r = FairThreshold(counted, inst.spec, eps);
      ASSERT_GE(r.value, (1.0 / 3.0 - eps) * opt - 1e-9) << seed << " " << eps;
      const int64_t kn = static_cast<int64_t>(inst.spec.k()) * inst.spec.n();
      ASSERT_LE(counted.evals(),
                kn * (1 + ThresholdTouchCap(inst.spec.budget(), eps)));
      ASSERT_TRUE(IsExtendable(r.solution, inst.spec));
    }
  }
}

TEST(FairThresholdTest, RequeuedPrioritiesDecay) {
  CoverageOracle f = GenCoverageInstance({25, 3, 30, 0.25, 1.0, 5.0}, 3);
  const FairnessSpec spec(25, 3, 8, {1, 1, 1}, {4, 4, 4});
  const SolveResult r = FairThreshold(f, spec, 0.2, {.record_trace = true});
  ASSERT_FALSE(r.trace.empty());
  int requeues = 0;
  for (const TraceStep& step : r.trace) {
    if (step.event == TraceEvent::kRequeue) {
      ++requeues;
      EXPECT_LT(step.gain, (1.0 - 0.2) * step.priority);
    } else if (step.event == TraceEvent::kAccept) {
      EXPECT_GE(step.gain, (1.0 - 0.2) * step.priority - 1e-12);
    }
  }
  // Accepted priorities never increase: the queue is popped in max order and
  // requeued priorities only shrink.
  double last = 1e300;
  for (const TraceStep& step : r.trace) {
    if (step.event != TraceEvent::kAccept) continue;
    EXPECT_LE(step.priority, last + 1e-12);
    last = step.priority;
  }
  EXPECT_GT(requeues, 0);
}

// Saturated objective whose later gains come out a hair below zero: the
// lower bound on type 2 must still be filled.
TEST(FairThresholdTest, FillsLowerBoundsWhenGainsVanish) {
  FunctionOracle f(6, 2, [](const KAssignment& s) {
    const int extra = std::max(s.total() - 2, 0);
    return std::min(s.total(), 2) - 1e-15 * extra;
  });
  const FairnessSpec spec(6, 2, 4, {0, 2}, {4, 4});
  for (double eps : {0.1, 0.5, 0.9}) {
    const SolveResult r = FairThreshold(f, spec, eps);
    EXPECT_EQ(r.solution.total(), 4) << eps;
    EXPECT_EQ(BiasError(r.solution, spec), 0) << eps;
  }
}

TEST(FairThresholdTest, UsesFewerCallsThanGreedyOnLargeBudgets) {
  CoverageOracle f = GenCoverageInstance({200, 3, 400, 0.02, 1.0, 5.0}, 12);
  const FairnessSpec spec(200, 3, 50, {5, 5, 5}, {30, 30, 30});
  CountingOracle g(f);
  CountingOracle t(f);
  FairGreedy(g, spec);
  FairThreshold(t, spec, 0.5);
  EXPECT_LT(t.evals(), g.evals());
}

TEST(TsGreedyTest, BudgetAboveNIsRejected) {
  ModularOracle f = ThreeElementOracle();
  EXPECT_EQ(CodeOf([&] { TsGreedy(f, 3, 2, 4); }), ErrorCode::kInvalidParameter);
}

TEST(IsGreedyTest, RejectsLowerBounds) {
  ModularOracle f = ThreeElementOracle();
  EXPECT_EQ(CodeOf([&] { IsGreedy(f, ThreeElementSpec()); }),
            ErrorCode::kInvalidParameter);
}

TEST(IsGreedyTest, NeverUsesZeroCapacityType) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    ModularOracle f = GenModularInstance({6, 3, 0.0, 10.0}, seed);
    const SolveResult r = IsGreedy(f, FairnessSpec::UpperOnly(6, 3, 4, {2, 0, 1}));
    ASSERT_EQ(r.solution.count(2), 0);
    ASSERT_EQ(r.solution.total(), 3);  // stops early: only 3 slots exist
  }
}

TEST(IsGreedyTest, EqualsTsGreedyWhenBoundsAreSlack) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    CoverageOracle f = GenCoverageInstance({8, 2, 15, 0.3, 1.0, 5.0}, seed);
    const SolveResult is = IsGreedy(f, FairnessSpec::UpperOnly(8, 2, 4, {8, 8}));
    const SolveResult ts = TsGreedy(f, 8, 2, 4);
    ASSERT_EQ(is.solution, ts.solution);
  }
}

TEST(RandomFairTest, AlwaysFeasible) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    testing::CorpusInstance inst = testing::MakeCorpusInstance(seed);
    const SolveResult r = RandomFair(inst.spec, seed, 5, inst.oracle);
    ASSERT_TRUE(IsFeasible(r.solution, inst.spec));
    ASSERT_EQ(r.solution.total(), inst.spec.budget());
  }
}

TEST(RandomFairTest, ConstantOracleMean) {
  FunctionOracle f(5, 2, [](const KAssignment&) { return 4.0; });
  EXPECT_DOUBLE_EQ(RandomFair(FairnessSpec(5, 2, 3, {1, 1}, {2, 2}), 1, 10, f).value, 4.0);
}

TEST(RandomFairTest, DeterministicPerSeed) {
  testing::CorpusInstance inst = testing::MakeCorpusInstance(9);
  const SolveResult a = RandomFair(inst.spec, 77, 10, inst.oracle);
  const SolveResult b = RandomFair(inst.spec, 77, 10, inst.oracle);
  EXPECT_EQ(a.solution, b.solution);
  EXPECT_EQ(a.value, b.value);
}

TEST(BruteForceOptTest, MatchesIndependentEnumeration) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    testing::CorpusInstance inst = testing::MakeCorpusInstance(seed);
    const SolveResult r = BruteForceOpt(inst.oracle, inst.spec);
    ASSERT_NEAR(r.value, testing::EnumeratedOptimum(inst.oracle, inst.spec), 1e-9);
    ASSERT_TRUE(IsFeasible(r.solution, inst.spec));
  }
}

TEST(BruteForceOptTest, TopBOnModularSingleType) {
  ModularOracle f({{3.0}, {9.0}, {1.0}, {7.0}, {5.0}});
  const SolveResult r = BruteForceOpt(f, FairnessSpec(5, 1, 3, {0}, {5}));
  EXPECT_DOUBLE_EQ(r.value, 21.0);
  EXPECT_EQ(LabelsOf(r.solution), (std::vector<TypeId>{0, 1, 0, 1, 1}));
}

TEST(BruteForceOptTest, GuardRejectsLargeInstances) {
  ModularOracle f = GenModularInstance({15, 2, 0.0, 1.0}, 1);
  const FairnessSpec spec(15, 2, 2, {0, 0}, {2, 2});
  EXPECT_EQ(CodeOf([&] { BruteForceOpt(f, spec); }), ErrorCode::kInstanceTooLarge);
  EXPECT_NO_THROW(BruteForceOpt(f, spec, {.allow_large = true}));
}

}  // namespace
}  // namespace fair_ksub
