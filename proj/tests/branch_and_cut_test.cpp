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

#include <gtest/gtest.h>

#include "cutlab/branch_and_cut.hpp"
#include "cutlab/error.hpp"
#include "cutlab/rng.hpp"

namespace cutlab {
namespace {

CutPlane CgJeroslow(int n) {
  return {RVector::Constant(n, Rational(1)), Rational(n / 2)};
}

IPInstance Knapsack() {
  // max 5x1 + 4x2 + 3x3  s.t. 2x1 + 3x2 + x3 <= 5, 4x1 + x2 + 2x3 <= 11, x <= 3
  IPInstance ip;
  ip.objective = RVector(3);
  ip.objective << 5, 4, 3;
  RVector a(3), b(3);
  a << 2, 3, 1;
  b << 4, 1, 2;
  ip.rows = {{a, Sense::kLe, 5}, {b, Sense::kLe, 11}};
  ip.upper.assign(3, Integer(3));
  return ip;
}

TEST(BranchSet, Reduce) {
  EXPECT_EQ(ReduceBranchSet({{0, Sense::kLe, 1}, {0, Sense::kLe, 5}}),
            (BranchSet{{0, Sense::kLe, 1}}));
  EXPECT_TRUE(ReduceBranchSet({}).empty());
  const BranchSet kept = {{0, Sense::kLe, 2}, {0, Sense::kGe, 1}};
  EXPECT_EQ(ReduceBranchSet(kept), kept);
  EXPECT_EQ(ToString(ReduceBranchSet({{2, Sense::kGe, 1}, {0, Sense::kGe, 0},
                                      {2, Sense::kGe, 2}, {2, Sense::kLe, 3}})),
            "x1>=0,x3<=3,x3>=2");
}

TEST(Run, IntegralRoot) {
  IPInstance ip;
  ip.objective = RVector::Constant(2, Rational(1));
  ip.upper.assign(2, Integer(1));
  const BCTree tree = BranchAndCut(ip, {});
  ASSERT_EQ(tree.size(), 1u);
  EXPECT_EQ(tree.nodes[0].status, NodeStatus::kFathomedIntegral);
  EXPECT_EQ(*tree.value, 2);
  EXPECT_EQ(Fingerprint(tree), "{} integral;");
}

TEST(Run, JeroslowTreeSizes) {
  for (int n : {3, 5, 7}) {
    const IPInstance ip = GenerateJeroslow(n, 0);
    const BCTree plain = BranchAndCut(ip, {});
    EXPECT_GE(plain.size(), std::size_t{1} << ((n - 1) / 2)) << n;
    EXPECT_FALSE(plain.optimal.has_value());
    EXPECT_FALSE(plain.capped);

    const BCTree cut = BranchAndCut(ip, {CgJeroslow(n)});
    ASSERT_EQ(cut.size(), 1u);
    EXPECT_EQ(cut.nodes[0].status, NodeStatus::kFathomedInfeasible);
    EXPECT_NE(Fingerprint(plain), Fingerprint(cut));
  }
}

TEST(Run, KnapsackMatchesBruteForce) {
  const IPInstance ip = Knapsack();
  const BCTree tree = BranchAndCut(ip, {});
  const auto best = BruteForceOptimum(ip);
  ASSERT_TRUE(best && tree.value);
  EXPECT_EQ(*tree.value, ip.Value(*best));
  EXPECT_TRUE(ip.IsFeasible(*tree.optimal));
}

TEST(Run, MinimizationAndOffset) {
  IPInstance ip = Knapsack();
  ip.direction = Direction::kMinimize;
  ip.objective = -ip.objective;
  ip.offset = Rational(1, 3);
  const BCTree tree = BranchAndCut(ip, {});
  const auto best = BruteForceOptimum(ip);
  EXPECT_EQ(*tree.value, ip.Value(*best));
}

TEST(Run, KappaCaps) {
  const IPInstance ip = GenerateJeroslow(7, 0);
  for (std::size_t kappa : {1, 2, 3, 4, 7}) {
    const BCTree tree = BranchAndCut(ip, {}, {kappa});
    EXPECT_LE(tree.size(), kappa);
    EXPECT_TRUE(tree.capped);
    std::size_t open = 0;
    for (const BCNode& node : tree.nodes) open += node.status == NodeStatus::kOpenCapped;
    EXPECT_GE(open, 1u);
  }
}

TEST(Run, SuppressedBoundingNeverPrunes) {
  BCConfig config;
  config.suppress_bounding = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const IPInstance ip = GenerateRandomPacking({3, 2, 5, 3}, seed);
    const BCTree tree = BranchAndCut(ip, {}, config);
    for (const BCNode& node : tree.nodes) {
      EXPECT_NE(node.status, NodeStatus::kFathomedByBound);
    }
    EXPECT_GE(tree.size(), BranchAndCut(ip, {}).size());
  }
}

TEST(ProductScore, Examples) {
  // Drops below gamma on both sides clamp to gamma^2.
  const IPInstance flat = GenerateJeroslow(3, 0);
  const LinearProgram lp = flat.Relaxation();
  const LpOptimal opt = std::get<LpOptimal>(Solve(lp));
  Eigen::Index frac = 0;
  while (IsInteger(opt.vertex(frac))) ++frac;
  Eigen::Index whole = 0;
  while (!IsInteger(opt.vertex(whole))) ++whole;
  const Rational gamma(1, 1000000);
  const ProductScoreValue s = ProductScore(lp, opt, frac, gamma);
  EXPECT_FALSE(s.infinite);
  EXPECT_EQ(s.value, gamma * gamma);

  try {
    ProductScore(lp, opt, whole, gamma);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIntegralCoordinate);
  }

  // One child infeasible: max x2 s.t. 2x1 + x2 = 4, x1 <= 2, x2 <= 1 has
  // x1 = 3/2; the x1 <= 1 side would need x2 = 2.
  IPInstance one;
  one.objective = RVector(2);
  one.objective << 0, 1;
  RVector b(2);
  b << 2, 1;
  one.rows = {{b, Sense::kEq, 4}};
  one.upper = {Integer(2), Integer(1)};
  const LinearProgram lp3 = one.Relaxation();
  const LpOptimal opt3 = std::get<LpOptimal>(Solve(lp3));
  ASSERT_EQ(opt3.vertex(0), Rational(3, 2));
  EXPECT_TRUE(ProductScore(lp3, opt3, 0, gamma).infinite);
}

TEST(ProductScore, SymmetricTiesPickLowestIndex) {
  const BCTree tree = BranchAndCut(GenerateJeroslow(5, 0), {});
  ASSERT_EQ(tree.nodes[0].status, NodeStatus::kBranched);
  // Every coordinate scores gamma^2 at the root, so the first fractional one
  // wins.
  const LpOptimal& root = std::get<LpOptimal>(tree.nodes[0].lp);
  Eigen::Index first = 0;
  while (IsInteger(root.vertex(first))) ++first;
  EXPECT_EQ(*tree.nodes[0].branch_var, first);
}

// Properties over random small instances: exact optimum against brute force,
// invariance of the optimum under valid root cuts, strictly increasing
// incumbent, bound fathoming only at or below the incumbent, size <= kappa.
TEST(Run, RandomInstancesAgainstBruteForce) {
  CounterRng rng(99);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const IPInstance ip = GenerateRandomPacking(
        {static_cast<int>(2 + seed % 3), static_cast<int>(1 + seed % 3), 6, 4}, seed);
    const auto best = BruteForceOptimum(ip);
    const BCTree tree = BranchAndCut(ip, {});
    ASSERT_FALSE(tree.capped);
    ASSERT_EQ(best.has_value(), tree.value.has_value());
    if (best) EXPECT_EQ(*tree.value, ip.Value(*best)) << seed;

    for (std::size_t k = 1; k < tree.incumbent_trace.size(); ++k) {
      EXPECT_GT(tree.incumbent_trace[k].second, tree.incumbent_trace[k - 1].second);
    }
    // Replay the processing order to recover the incumbent at each step.
    std::optional<Rational> inc;
    std::size_t next = 0;
    for (std::size_t id : tree.order) {
      const BCNode& node = tree.nodes[id];
      if (node.status == NodeStatus::kFathomedByBound) {
        ASSERT_TRUE(inc.has_value());
        EXPECT_LE(std::get<LpOptimal>(node.lp).value, *inc);
      }
      if (next < tree.incumbent_trace.size() && tree.incumbent_trace[next].first == id) {
        inc = tree.incumbent_trace[next++].second;
      }
      if (node.status == NodeStatus::kFathomedIntegral) {
        EXPECT_TRUE(IsIntegral(std::get<LpOptimal>(node.lp).vertex));
      }
    }

    const RootPool pool = BuildRootPool(ip);
    if (!pool.cuts.empty()) {
      const auto pick = static_cast<std::size_t>(
          rng.UniformInt(0, static_cast<std::int64_t>(pool.cuts.size()) - 1));
      const BCTree cut = BranchAndCut(ip, {pool.cuts[pick]});
      ASSERT_EQ(best.has_value(), cut.value.has_value());
      if (best) EXPECT_EQ(*cut.value, ip.Value(*best)) << seed;
    }
  }
}

TEST(Fingerprint, DeterministicAndDumped) {
  const IPInstance ip = Knapsack();
  const BCTree a = BranchAndCut(ip, {});
  const BCTree b = BranchAndCut(ip, {});
  EXPECT_EQ(Fingerprint(a), Fingerprint(b));
  EXPECT_EQ(DumpTree(a), DumpTree(b));
  const std::string dump = DumpTree(a);
  EXPECT_EQ(dump.rfind("node 0 parent -1 sigma {} status ", 0), 0u);
  EXPECT_NE(dump.find(" z "), std::string::npos);
}

}  // namespace
}  // namespace cutlab
