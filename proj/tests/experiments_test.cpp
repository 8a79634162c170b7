// Copyright 2026 The cutlab Authors
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

#include "cutlab/experiments.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <map>
#include <numeric>
#include <regex>

#include "cutlab/error.hpp"
#include "cutlab/rng.hpp"
#include "cutlab/sensitivity.hpp"

namespace cutlab {
namespace {

RVector Vec(std::initializer_list<Rational> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (const Rational& x : xs) v(k++) = x;
  return v;
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(50);
  ParallelFor(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelForTest, PropagatesExceptions) {
  EXPECT_THROW(ParallelFor(10, 3,
                           [](std::size_t i) {
                             if (i == 7) throw Error(ErrorKind::kInvalidArgument, "x");
                           }),
               Error);
}

TEST(MuGridTest, IncludesBothEnds) {
  const auto grid = MuGrid(Rational(1, 100));
  ASSERT_EQ(grid.size(), 101u);
  EXPECT_EQ(grid.front(), 0);
  EXPECT_EQ(grid.back(), 1);
  const auto coarse = MuGrid(Rational(3, 10));
  EXPECT_EQ(coarse, (std::vector<Rational>{0, Rational(3, 10), Rational(6, 10),
                                           Rational(9, 10), 1}));
  EXPECT_THROW(MuGrid(0), Error);
}

SweepConfig SmallSweep() {
  SweepConfig cfg;
  cfg.distribution = FacilityPerturb{4, 4, 0, 10.0, 100, 3};
  cfg.samples = 4;
  cfg.mu_step = Rational(1, 10);
  cfg.bc.kappa = 2000;
  cfg.seed = 11;
  return cfg;
}

TEST(MuSweepTest, DeterministicAcrossThreadCounts) {
  SweepConfig cfg = SmallSweep();
  const std::string serial = MuSweep(cfg).Csv();
  cfg.threads = 4;
  EXPECT_EQ(MuSweep(cfg).Csv(), serial);
  EXPECT_EQ(serial.substr(0, serial.find('\n')), "mu,mean_tree_size,sd,n_samples");
  EXPECT_EQ(std::count(serial.begin(), serial.end(), '\n'), 12);
}

TEST(MuSweepTest, StepFunctionOfSelection) {
  const SweepResult r = MuSweep(SmallSweep());
  ASSERT_EQ(r.instances.size(), 4u);
  for (const SweepInstance& inst : r.instances) {
    ASSERT_EQ(inst.sizes.size(), 11u);
    EXPECT_LE(inst.DistinctSizes(), inst.DistinctSelections());
    for (std::size_t g = 0; g < inst.sizes.size(); ++g) {
      EXPECT_LE(inst.selections[g].size(), 5u);
      for (std::size_t h = 0; h < g; ++h) {
        if (inst.selections[g] == inst.selections[h]) EXPECT_EQ(inst.sizes[g], inst.sizes[h]);
      }
    }
  }
  for (std::size_t g = 0; g < r.rows.size(); ++g) {
    double mean = 0;
    for (const SweepInstance& inst : r.instances) mean += static_cast<double>(inst.sizes[g]);
    EXPECT_DOUBLE_EQ(r.rows[g].mean_tree_size, mean / 4);
    EXPECT_EQ(r.rows[g].n_samples, 4);
  }
}

TEST(MuSweepTest, SingleSampleHasZeroSd) {
  SweepConfig cfg;
  cfg.distribution = Jeroslow{5};
  cfg.mu_step = Rational(1, 2);
  const SweepResult r = MuSweep(cfg);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const SweepRow& row : r.rows) EXPECT_EQ(row.sd, 0.0);
}

TEST(ScanLineTest, LocatesAStepToTheStatedWidth) {
  const Rational jump(1, 3);
  const auto f = [&](const Rational& t) { return std::string(t < jump ? "A" : "B"); };
  const ScanReport r = ScanLine(0, 1, 4, f, {});
  ASSERT_EQ(r.breakpoints.size(), 1u);
  EXPECT_LE(abs(r.breakpoints[0] - jump), Rational(1, 1 << 20));
  EXPECT_EQ(r.intervals, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(r.IntervalAt(0), "A");
  EXPECT_EQ(r.IntervalAt(1), "B");
}

TEST(ScanLineTest, ConstantScanHasNoBreakpoints) {
  const ScanReport r = ScanLine(0, 1, 2, [](const Rational&) { return std::string("X"); }, {});
  EXPECT_TRUE(r.breakpoints.empty());
  EXPECT_EQ(r.samples.size(), 2u);
  EXPECT_EQ(r.Csv(), "t,fingerprint_id\n0,0\n1,0\n");
}

TEST(ScanLineTest, FindsEveryCrossingInsideOneSampleGap) {
  // A, B, C between two samples: both crossings recovered in order.
  const auto f = [](const Rational& t) {
    return std::string(t < Rational(1, 5) ? "A" : t < Rational(2, 5) ? "B" : "C");
  };
  const ScanReport r = ScanLine(0, 1, 2, f, {});
  ASSERT_EQ(r.breakpoints.size(), 2u);
  EXPECT_EQ(r.intervals, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_LT(r.breakpoints[0], r.breakpoints[1]);
}

TEST(ScanLineTest, StopsPastTheCeiling) {
  // Alternates every 1/200: far more than 4 breakpoints.
  const auto f = [](const Rational& t) {
    return std::to_string(static_cast<long>(Floor(t * 200)) % 2);
  };
  ScanConfig cfg;
  cfg.max_breakpoints = 4;
  cfg.bisection_depth = 12;
  const ScanReport r = ScanLine(0, 1, 400, f, cfg);
  EXPECT_TRUE(r.exceeded);
}

TEST(ScanLineTest, RejectsBadRanges) {
  const auto f = [](const Rational&) { return std::string(); };
  EXPECT_THROW(ScanLine(1, 0, 4, f, {}), Error);
  EXPECT_THROW(ScanLine(0, 1, 1, f, {}), Error);
}

TEST(LineScanTest, JeroslowCutFromRescuingToVacuous) {
  const IPInstance ip = GenerateJeroslow(3, 1);
  const RVector alpha = Vec({1, 1, 1});
  const ScanReport r = LineScan(ip, alpha, 1, 3, 9);
  EXPECT_NE(r.intervals.front(), r.intervals.back());
  EXPECT_EQ(r.intervals.front(), Fingerprint(BranchAndCut(ip, {CutPlane{alpha, 1}})));
  EXPECT_EQ(r.intervals.back(), Fingerprint(BranchAndCut(ip, {})));
  EXPECT_LE(r.breakpoints.size(), 64u);
  for (std::size_t k = 1; k < r.intervals.size(); ++k) {
    EXPECT_NE(r.intervals[k], r.intervals[k - 1]);
  }
  // The rescue ends where the cut stops touching the LP optimum, sum x = 3/2.
  EXPECT_LE(abs(r.breakpoints.front() - Rational(3, 2)), Rational(2, 1 << 20));
}

TEST(LineScanTest, ProbesInsideIntervalsAgree) {
  const IPInstance ip = GenerateRandomPacking({2, 2, 4, 3}, 5);
  const RVector alpha = Vec({1, 2});
  const ScanReport r = LineScan(ip, alpha, 0, 8, 17);
  CounterRng rng(3);
  ASSERT_FALSE(r.exceeded);
  for (std::size_t k = 0; k < r.intervals.size(); ++k) {
    const Rational a = k == 0 ? r.lo : r.breakpoints[k - 1];
    const Rational b = k == r.breakpoints.size() ? r.hi : r.breakpoints[k];
    // Stay clear of the bracket the breakpoint sits in.
    const Rational margin = (r.hi - r.lo) / (1 << 19);
    if (b - a <= 2 * margin) continue;
    for (int probe = 0; probe < 4; ++probe) {
      const Rational t = a + margin + (b - a - 2 * margin) * Rational(rng.UniformInt(0, 1024), 1024);
      bool valid = IsValidCut(ip, CutPlane{alpha, t});
      const std::string got =
          valid ? Fingerprint(BranchAndCut(ip, {CutPlane{alpha, t}})) : kInvalidCutFingerprint;
      EXPECT_EQ(got, r.intervals[k]) << "interval " << k << " t=" << ToString(t);
    }
  }
}

TEST(LineScanTest, InvalidCutsGetTheirOwnClass) {
  const IPInstance ip = GenerateRandomPacking({2, 2, 4, 3}, 5);
  const RVector alpha = Vec({1, 0});
  const auto pts = EnumerateIntegerPoints(ip);
  Rational best = 0;
  for (const RVector& x : pts) best = std::max(best, x(0));
  ASSERT_GT(best, 0);
  const ScanReport r = LineScan(ip, alpha, -1, best, 5);
  EXPECT_EQ(r.intervals.front(), kInvalidCutFingerprint);
  EXPECT_NE(r.intervals.back(), kInvalidCutFingerprint);
  EXPECT_LE(abs(r.breakpoints.back() - best), Rational(1, 1 << 19));
}

TEST(LineScanTest, CsvAndSidecar) {
  const IPInstance ip = GenerateJeroslow(3, 1);
  const ScanReport r = LineScan(ip, Vec({1, 1, 1}), 1, 3, 3);
  const std::string side = r.SidecarCsv();
  EXPECT_TRUE(side.starts_with("fingerprint_id,fingerprint_hash\n"));
  EXPECT_TRUE(std::regex_search(side, std::regex("\n0,[0-9a-f]{16}\n")));
  EXPECT_EQ(r.Fingerprints().size() + 1,
            static_cast<std::size_t>(std::count(side.begin(), side.end(), '\n')));
  const std::string csv = r.Csv();
  EXPECT_EQ(r.samples.size() + 1, static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')));
  EXPECT_EQ(StableHash(""), 0xcbf29ce484222325ULL);
}

TEST(GmiGridScanTest, JeroslowMultiplierLine) {
  const IPInstance ip = GenerateJeroslow(3, 1);
  const auto reports = GmiGridScan(ip, Vec({0}), 1, 9);
  ASSERT_EQ(reports.size(), 1u);
  const ScanReport& r = reports[0];
  // u = 0 and u = +-1 make frac(u·b) vanish.
  EXPECT_EQ(r.IntervalAt(0), kDegenerateCutFingerprint);
  EXPECT_EQ(r.IntervalAt(-1), kDegenerateCutFingerprint);
  EXPECT_NE(r.IntervalAt(Rational(1, 2)), kDegenerateCutFingerprint);
  EXPECT_FALSE(r.exceeded);
}

TEST(GmiGridScanTest, SingleCellIsOneFingerprint) {
  // Inside (1/6, 1/3): floors of 2u and 3u stay 0 and the cut's tree is
  // the same throughout.
  const IPInstance ip = GenerateJeroslow(3, 1);
  const RVector u = Vec({Rational(1, 4)});
  const std::string at = Fingerprint(BranchAndCut(ip, {GmiCut(ToEqualityForm(ip), u)}));
  for (int k = 1; k < 8; ++k) {
    const RVector v = Vec({Rational(1, 6) + Rational(k, 48)});
    EXPECT_EQ(GmiTupleAt(AsEqualityForm(ip).ip, v), GmiTupleAt(AsEqualityForm(ip).ip, u));
    EXPECT_EQ(Fingerprint(BranchAndCut(ip, {GmiCut(ToEqualityForm(ip), v)})), at);
  }
}

TEST(GmiGridScanTest, Budget) {
  const IPInstance ip = GenerateJeroslow(3, 1);
  EXPECT_THROW(GmiGridScan(ip, Vec({0}), 1, 20000), Error);
  EXPECT_THROW(GmiGridScan(ip, Vec({0, 0}), 1, 4), Error);
}

TEST(ExplainBreakpointTest, JeroslowRescueEndsOnTheSeparationPlane) {
  const IPInstance ip = GenerateJeroslow(3, 1);
  const RVector alpha = Vec({1, 1, 1});
  EXPECT_EQ(ExplainBreakpoint(ip, alpha, Rational(3, 2), Rational(1, 1 << 20)),
            BreakpointCause::kLpArrangement);
}

TEST(ExplainBreakpointTest, ValidityBoundary) {
  const IPInstance ip = GenerateRandomPacking({2, 2, 4, 3}, 5);
  const RVector alpha = Vec({1, 0});
  Rational best = 0;
  for (const RVector& x : EnumerateIntegerPoints(ip)) best = std::max(best, x(0));
  EXPECT_EQ(ExplainBreakpoint(ip, alpha, best, Rational(1, 1024)), BreakpointCause::kValidity);
}

// Every breakpoint on random n = 2 lines is a zero of some surface: a node
// LP's arrangement, or one of the tree's value and score comparisons.
TEST(ExplainBreakpointTest, RandomLinesLeaveNothingUnexplained) {
  CounterRng rng(99);
  int breakpoints = 0;
  std::map<BreakpointCause, int> causes;
  for (int line = 0; line < 40; ++line) {
    const IPInstance ip = GenerateRandomPacking({2, 3, 7, 6}, rng.Next());
    RVector alpha(2);
    alpha << Rational(rng.UniformInt(-1, 4)), Rational(rng.UniformInt(-1, 4));
    if (alpha.isZero()) alpha(0) = 1;
    Rational best = 0;
    for (const RVector& x : EnumerateIntegerPoints(ip)) best = std::max(best, Dot(alpha, x));
    LinearProgram lp = ip.Relaxation();
    lp.objective = alpha;
    const Rational top = std::get<LpOptimal>(Solve(lp)).value + 1;
    ScanConfig cfg;
    cfg.bisection_depth = 22;
    const ScanReport r = LineScan(ip, alpha, best - 1, top, 32, cfg);
    for (const Rational& t : r.breakpoints) {
      const BreakpointCause c = ExplainBreakpoint(ip, alpha, t, Rational(1, 1 << 20));
      ++causes[c];
      ++breakpoints;
      EXPECT_NE(c, BreakpointCause::kUnexplained) << r.line << " t=" << ToString(t);
    }
  }
  EXPECT_GT(breakpoints, 40);
  EXPECT_GT(causes[BreakpointCause::kLpArrangement], 0);
  // Not every change is an LP-arrangement zero: the tree-level comparisons
  // contribute their own breakpoints.
  EXPECT_GT(causes[BreakpointCause::kBoundComparison] + causes[BreakpointCause::kNodeOrder] +
                causes[BreakpointCause::kBranchingScore],
            0);
}

TEST(GapTest, SameSampleGivesZeroGap) {
  GapConfig cfg;
  cfg.distribution = JeroslowMixture{{3, 5, 7}};
  cfg.u_grid = {Vec({Rational(1, 4)}), Vec({Rational(1, 3)})};
  cfg.n_schedule = {12};
  cfg.repetitions = 1;
  cfg.holdout = 12;
  cfg.seed = 9;
  cfg.holdout_stream = DeriveSeed(9, 1);  // training repetition 0's stream
  const GapReport r = GeneralizationGap(cfg);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].mean_gap, 0.0);
  EXPECT_EQ(r.rows[0].q90_gap, 0.0);
}

TEST(GapTest, DeterministicDistributionGivesZeroGap) {
  GapConfig cfg;
  cfg.distribution = Jeroslow{5};
  cfg.u_grid = {Vec({Rational(1, 4)}), Vec({Rational(1, 2)})};
  cfg.n_schedule = {1, 4};
  cfg.repetitions = 3;
  const GapReport r = GeneralizationGap(cfg);
  for (const GapRow& row : r.rows) {
    EXPECT_EQ(row.mean_gap, 0.0);
    EXPECT_EQ(row.q90_gap, 0.0);
  }
  EXPECT_EQ(r.Csv(), "n,mean_gap,q90_gap\n1,0.000000,0.000000\n4,0.000000,0.000000\n");
}

TEST(GapTest, ShrinksWithSampleSize) {
  GapConfig cfg;
  cfg.distribution = JeroslowMixture{{3, 5, 7}};
  cfg.u_grid = {Vec({0}), Vec({Rational(1, 4)}), Vec({Rational(1, 3)})};
  cfg.n_schedule = {2, 16};
  cfg.repetitions = 10;
  cfg.seed = 4;
  cfg.threads = 4;
  const GapReport r = GeneralizationGap(cfg);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const GapRow& row : r.rows) {
    EXPECT_GE(row.mean_gap, 0.0);
    EXPECT_GE(row.q90_gap, 0.0);
  }
  EXPECT_LE(r.rows.back().mean_gap, r.rows.front().mean_gap);
}

TEST(GapTest, GmiTreeSizeMatchesDirectRun) {
  const IPInstance ip = GenerateJeroslow(5, 1);
  EXPECT_EQ(GmiTreeSize(ip, Vec({0}), {}), BranchAndCut(ip, {}).size());
  const RVector u = Vec({Rational(1, 4)});
  EXPECT_EQ(GmiTreeSize(ip, u, {}), BranchAndCut(ip, {GmiCut(ToEqualityForm(ip), u)}).size());
}

}  // namespace
}  // namespace cutlab
