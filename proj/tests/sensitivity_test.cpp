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

#include <algorithm>

#include <gtest/gtest.h>

#include "cutlab/error.hpp"
#include "cutlab/rng.hpp"
#include "cutlab/sensitivity.hpp"

namespace cutlab {
namespace {

RVector Vec(std::initializer_list<Rational> v) {
  RVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const Rational& r : v) out(i++) = r;
  return out;
}

// max x + y  s.t.  x <= 1, y >= 0, y <= x.
LinearProgram Triangle() {
  LinearProgram lp;
  lp.objective = Vec({1, 1});
  lp.rows = {{Vec({1, 0}), Sense::kLe, 1},
             {Vec({0, 1}), Sense::kGe, 0},
             {Vec({-1, 1}), Sense::kLe, 0}};
  return lp;
}

// max x + y + z  s.t.  x + y <= 1, x + z <= 1, x <= 1, z <= 1.
LinearProgram ThreeVariable() {
  LinearProgram lp;
  lp.objective = Vec({1, 1, 1});
  lp.rows = {{Vec({1, 1, 0}), Sense::kLe, 1},
             {Vec({1, 0, 1}), Sense::kLe, 1},
             {Vec({1, 0, 0}), Sense::kLe, 1},
             {Vec({0, 0, 1}), Sense::kLe, 1}};
  return lp;
}

LinearProgram UnitSquare() {
  LinearProgram lp;
  lp.objective = Vec({1, 2});
  lp.upper = {Rational(1), Rational(1)};
  return lp;
}

LinearProgram RandomLp(std::uint64_t seed, int n, int m) {
  CounterRng rng(seed);
  LinearProgram lp;
  lp.objective.resize(n);
  for (int j = 0; j < n; ++j) lp.objective(j) = Rational(rng.UniformInt(1, 40), rng.UniformInt(1, 9));
  for (int i = 0; i < m; ++i) {
    RVector a(n);
    for (int j = 0; j < n; ++j) a(j) = rng.UniformInt(-3, 6);
    lp.rows.push_back({a, Sense::kLe, rng.UniformInt(2, 12)});
  }
  // Keep it bounded.
  lp.rows.push_back({RVector::Constant(n, Rational(1)), Sense::kLe, 10});
  return lp;
}

EdgeId RowEdge(const LinearProgram& lp, const Constraint& row) {
  const auto h = HalfspaceRows(lp);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(h.size()); ++i) {
    if (h[i].rhs == row.rhs && Equal(h[i].coeffs, row.coeffs)) return {i};
  }
  ADD_FAILURE() << "row not found";
  return {};
}

TEST(Edges, Examples) {
  EXPECT_EQ(LpEdges(Triangle()).size(), 3u);
  EXPECT_EQ(LpEdges(UnitSquare()).size(), 4u);
  // x <= 1 written twice: one geometric edge, two index sets.
  LinearProgram dup = UnitSquare();
  dup.rows.push_back({Vec({1, 0}), Sense::kLe, 1});
  dup.rows.push_back({Vec({1, 0}), Sense::kLe, 1});
  EXPECT_EQ(LpEdges(dup).size(), 5u);
}

TEST(ClosedForm, TriangleExamples) {
  const LinearProgram lp = Triangle();
  const EdgeId x_eq_1 = RowEdge(lp, {Vec({1, 0}), Sense::kLe, 1});
  const EdgeId y_eq_x = RowEdge(lp, {Vec({-1, 1}), Sense::kLe, 0});
  EXPECT_TRUE(Equal(ClosedForm(lp, x_eq_1, Vec({Rational(1, 2), 1}), 1),
                    Vec({1, Rational(1, 2)})));
  EXPECT_TRUE(Equal(ClosedForm(lp, y_eq_x, Vec({1, 1}), 1),
                    Vec({Rational(1, 2), Rational(1, 2)})));
  // alpha along the line x = 1 has no intersection.
  try {
    ClosedForm(lp, x_eq_1, Vec({1, 0}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSingularAugmentedSystem);
  }
  // Symbolic form: x = (1, (b - a1) / a2).
  const SymbolicVertex v = SymbolicClosedForm(lp, x_eq_1);
  const Polynomial a1 = Polynomial::Variable(0), a2 = Polynomial::Variable(1),
                   b = Polynomial::Variable(2);
  EXPECT_TRUE(v.numer[0] == v.det);
  EXPECT_TRUE(v.numer[1].ProportionalTo(b - a1));
  EXPECT_TRUE(v.det.ProportionalTo(a2));
}

TEST(EdgeHalfspaces, TriangleEdgeXEqualsOne) {
  // 0 <= (1 - a1)/a2 <= 1 at b = 1.
  const LinearProgram lp = Triangle();
  const EdgeHalfspaces hs = EdgeHitHalfspaces(lp, RowEdge(lp, {Vec({1, 0}), Sense::kLe, 1}));
  CounterRng rng(3);
  for (int t = 0; t < 400; ++t) {
    const Rational a1(rng.UniformInt(-64, 64), 16), a2(rng.UniformInt(-64, 64), 16);
    const bool expect = a2 != 0 && (1 - a1) / a2 >= 0 && (1 - a1) / a2 <= 1;
    EXPECT_EQ(hs.Contains(Vec({a1, a2, 1})), expect) << a1 << " " << a2;
  }
}

TEST(EdgeHalfspaces, InsideImpliesFeasibleClosedForm) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LinearProgram lp = RandomLp(seed, 3, 3);
    const auto h = HalfspaceRows(lp);
    CounterRng rng(seed + 100);
    for (const EdgeId& e : LpEdges(lp)) {
      const EdgeHalfspaces hs = EdgeHitHalfspaces(lp, e);
      for (int t = 0; t < 20; ++t) {
        RVector p(4);
        for (int j = 0; j < 4; ++j) p(j) = Rational(rng.UniformInt(-40, 40), 8);
        if (!hs.Contains(p)) continue;
        const RVector x = ClosedForm(lp, e, p.head(3), p(3));
        for (const Constraint& row : h) EXPECT_TRUE(row.SatisfiedBy(x));
      }
    }
  }
}

TEST(Indifference, TriangleFactorsIntoTwoLines) {
  const LinearProgram lp = Triangle();
  const EdgeId p = RowEdge(lp, {Vec({1, 0}), Sense::kLe, 1});
  const EdgeId q = RowEdge(lp, {Vec({-1, 1}), Sense::kLe, 0});
  const Polynomial poly = IndifferencePoly(lp, p, q);
  EXPECT_EQ(poly.Degree(), 2);
  EXPECT_TRUE(IndifferencePoly(lp, q, p) == -poly);
  // At b = 1: proportional to (a1 - a2)(a1 + a2 - 1).
  const Polynomial a1 = Polynomial::Variable(0), a2 = Polynomial::Variable(1);
  const Polynomial at_one = poly.Substitute({a1, a2, Polynomial(1)});
  EXPECT_TRUE(at_one.ProportionalTo((a1 - a2) * (a1 + a2 - Polynomial(1))));
  for (int k = -25; k < 25; ++k) {
    const Rational t(k, 7);
    EXPECT_EQ(poly.Evaluate(Vec({t, t, 1})), 0);
    EXPECT_EQ(poly.Evaluate(Vec({t, 1 - t, 1})), 0);
  }
  EXPECT_THROW(IndifferencePoly(lp, p, p), Error);
}

TEST(Indifference, ThreeVariableSurface) {
  const LinearProgram lp = ThreeVariable();
  const auto h = HalfspaceRows(lp);
  auto find = [&](const RVector& a, const Rational& b) {
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(h.size()); ++i) {
      if (h[i].rhs == b && Equal(h[i].coeffs, a)) return i;
    }
    return Eigen::Index{-1};
  };
  const EdgeId xy_x = {find(Vec({1, 1, 0}), 1), find(Vec({1, 0, 0}), 1)};
  const EdgeId xz_z = {find(Vec({1, 0, 1}), 1), find(Vec({0, 0, 1}), 1)};
  const Polynomial a1 = Polynomial::Variable(0), a2 = Polynomial::Variable(1),
                   a3 = Polynomial::Variable(2), b = Polynomial::Variable(3);
  const Polynomial expected = a1 * a2 - a2 * b - a3 * a3 + a3 * b;
  EXPECT_TRUE(IndifferencePoly(lp, xy_x, xz_z).ProportionalTo(expected))
      << IndifferencePoly(lp, xy_x, xz_z).ToString(CutVariableNames(3));
}

// On an indifference surface (solved for beta) both edges' vertices have the
// same objective value.
TEST(Indifference, EqualObjectiveOnSurface) {
  CounterRng rng(11);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const LinearProgram lp = RandomLp(seed, 2, 3);
    const auto edges = LpEdges(lp);
    for (std::size_t p = 0; p < edges.size(); ++p) {
      for (std::size_t q = p + 1; q < edges.size(); ++q) {
        const Polynomial poly = IndifferencePoly(lp, edges[p], edges[q]);
        const RVector alpha = Vec({Rational(rng.UniformInt(-20, 20), 4),
                                   Rational(rng.UniformInt(-20, 20), 4)});
        // Restricted to this alpha the surface is at most quadratic in beta;
        // the beta^2 term vanishes because beta sits in one row only.
        const Polynomial in_b = poly.Substitute(
            {Polynomial(alpha(0)), Polynomial(alpha(1)), Polynomial::Variable(0)});
        if (in_b.Degree() != 1) continue;
        const Rational beta = -in_b.Coefficient({}) / in_b.Coefficient({1});
        try {
          const RVector xp = ClosedForm(lp, edges[p], alpha, beta);
          const RVector xq = ClosedForm(lp, edges[q], alpha, beta);
          EXPECT_EQ(Dot(lp.objective, xp), Dot(lp.objective, xq));
          ++hits;
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::kSingularAugmentedSystem);
        }
      }
    }
  }
  EXPECT_GT(hits, 10);
}

TEST(Arrangement, TriangleContainsBothLines) {
  const SurfaceStore store = BuildArrangement(Triangle());
  const Polynomial a1 = Polynomial::Variable(0), a2 = Polynomial::Variable(1),
                   b = Polynomial::Variable(2);
  // With beta free, the pair surface is (a1 - a2)(a1 + a2 - b) up to scale.
  bool found = false;
  for (const auto& s : store.surfaces) {
    found |= s.poly.ProportionalTo((a1 - a2) * (a1 + a2 - b));
  }
  EXPECT_TRUE(found) << store.Dump();
  EXPECT_LE(store.hyperplanes, store.hyperplane_bound);
  EXPECT_LE(store.indifference, store.surface_bound);
  EXPECT_NE(store.Dump().find("surf deg=2 "), std::string::npos);
}

TEST(Arrangement, DegreesAndBudget) {
  const SurfaceStore store = BuildArrangement(UnitSquare());
  for (const auto& s : store.surfaces) EXPECT_LE(s.poly.Degree(), 2);
  EXPECT_LE(store.hyperplanes, store.hyperplane_bound);
  LinearProgram big = RandomLp(1, 4, 2);
  try {
    BuildArrangement(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBudgetExceeded);
  }
}

TEST(Verify, Examples) {
  const LinearProgram lp = Triangle();
  const RegionWitness far = VerifyCut(lp, Vec({1, 1}), 100);
  EXPECT_EQ(far.regime, Regime::kUnchanged);
  EXPECT_TRUE(far.verified);
  const RegionWitness w = VerifyCut(lp, Vec({Rational(1, 2), 1}), 1);
  EXPECT_EQ(w.regime, Regime::kActiveEdge);
  EXPECT_TRUE(w.verified && w.vertex_match);
  EXPECT_EQ(*w.edge, RowEdge(lp, {Vec({1, 0}), Sense::kLe, 1}));
  const RegionWitness empty = VerifyCut(lp, Vec({-1, 0}), -2);
  EXPECT_EQ(empty.regime, Regime::kEmpty);
  EXPECT_TRUE(empty.verified);
}

// Property: the closed form matches a fresh simplex solve on random LPs.
TEST(Verify, RandomLpsAllVerified) {
  int active = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const LinearProgram lp = RandomLp(seed, n, 3 + static_cast<int>(seed % 4));
    for (const RegionWitness& w : VerifyClosedForm(lp, 25, seed)) {
      EXPECT_TRUE(w.verified) << seed << " " << ToString(w.alpha) << " <= " << w.beta;
      active += w.regime == Regime::kActiveEdge;
    }
  }
  EXPECT_GT(active, 20);
}

TEST(MultiCut, Examples) {
  const LinearProgram lp = Triangle();
  const EdgeId e = RowEdge(lp, {Vec({1, 0}), Sense::kLe, 1});
  const CutPlane c{Vec({Rational(1, 2), 1}), 1};
  EXPECT_TRUE(Equal(MultiClosedForm(lp, e, {c}), ClosedForm(lp, e, c.alpha, c.beta)));
  const CutPlane d{Vec({1, -1}), 0};
  const RVector x = MultiClosedForm(lp, {}, {c, d});
  EXPECT_TRUE(Equal(x, Vec({Rational(2, 3), Rational(2, 3)})));
  EXPECT_THROW(MultiClosedForm(lp, {}, {c, c}), Error);
}

TEST(MultiCut, FaceSearchMatchesSimplex) {
  CounterRng rng(5);
  int two_binding = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const LinearProgram lp = RandomLp(seed, 3, 3);
    const LpOptimal opt = std::get<LpOptimal>(Solve(lp));
    std::vector<CutPlane> cuts;
    for (int k = 0; k < 2; ++k) {
      RVector a(3);
      for (int j = 0; j < 3; ++j) a(j) = Rational(rng.UniformInt(-4, 8), 4);
      // Shave a bit off the current optimum so the cut separates it.
      cuts.push_back({a, Dot(a, opt.vertex) - Rational(rng.UniformInt(1, 8), 4)});
    }
    const LpOutcome out = Solve(AddConstraints(lp, {cuts[0].AsConstraint(),
                                                    cuts[1].AsConstraint()}));
    const auto face = FaceSearchOptimum(lp, cuts);
    ASSERT_EQ(face.has_value(), IsOptimal(out));
    if (!face) continue;
    EXPECT_EQ(face->value, std::get<LpOptimal>(out).value);
    std::vector<CutPlane> binding;
    for (std::size_t i : face->binding_cuts) binding.push_back(cuts[i]);
    if (!binding.empty()) {
      EXPECT_TRUE(Equal(MultiClosedForm(lp, face->face, binding), face->point));
    }
    two_binding += binding.size() == 2;
  }
  EXPECT_GT(two_binding, 0);
}

TEST(GmiArrangement, JeroslowLevels) {
  const IPInstance ip = GenerateJeroslow(3, 0);
  const GmiArrangementResult arr = GmiArrangement(ip, 1);
  // b = 3 gives u = k/3 for k in [-3, 3]; the three identical columns a_i = 2
  // give u = k/2 for k in [-2, 2], of which u = 0, +-1 are already present; the
  // comparisons u(2 - 3) = d for d in [-5, 5] add the integers not yet seen.
  EXPECT_EQ(arr.rhs_levels, 7u);
  EXPECT_EQ(arr.column_levels, 2u);
  EXPECT_EQ(arr.comparisons, 8u);
  EXPECT_LE(arr.hyperplanes.size(), arr.bound);

  const GmiArrangementResult zero = GmiArrangement(ip, 0);
  const GmiTuple t = GmiTupleAt(ip, Vec({0}));
  EXPECT_EQ(t.rhs_floor, 0);
  for (const Integer& f : t.column_floors) EXPECT_EQ(f, 0);
  EXPECT_EQ(zero.hyperplanes.size(), 1u);
}

TEST(GmiArrangement, Errors) {
  IPInstance ip = GenerateJeroslow(3, 0);
  EXPECT_THROW(GmiArrangement(ip, 10000), Error);
  ip.rows[0].sense = Sense::kLe;
  try {
    GmiArrangement(ip, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotEqualityForm);
  }
}

// Property: multipliers with equal sign vectors give equal floor tuples.
TEST(GmiArrangement, SameCellSameTuple) {
  CounterRng rng(17);
  int pairs = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const IPInstance ip =
        ToEqualityForm(GenerateRandomPacking({2, 2, 3, 2}, seed)).ip;
    const Rational U = 2;
    const GmiArrangementResult arr = GmiArrangement(ip, U);
    for (int t = 0; t < 40; ++t) {
      RVector u(ip.num_rows()), v(ip.num_rows());
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        u(i) = Rational(rng.UniformInt(-512, 512), 256);
        v(i) = u(i) + Rational(rng.UniformInt(-4, 4), 1024);
      }
      if (SignVector(arr.hyperplanes, u) != SignVector(arr.hyperplanes, v)) continue;
      EXPECT_TRUE(GmiTupleAt(ip, u) == GmiTupleAt(ip, v));
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 100);
}

TEST(HasRootInTest, LinearAndQuadratic) {
  const Polynomial t = Polynomial::Variable(0);
  EXPECT_TRUE(HasRootIn(t - Rational(1, 3), 0, 1));
  EXPECT_FALSE(HasRootIn(t - 2, 0, 1));
  EXPECT_TRUE(HasRootIn(t - 1, 0, 1));  // endpoint root
  // (t - 1/2)^2 - 1/100 dips below zero only around 1/2.
  const Polynomial q = (t - Rational(1, 2)) * (t - Rational(1, 2)) - Rational(1, 100);
  EXPECT_FALSE(HasRootIn(q, Rational(45, 100), Rational(55, 100)));
  EXPECT_TRUE(HasRootIn(q, Rational(3, 10), Rational(7, 10)));
  // Double root strictly inside.
  EXPECT_TRUE(HasRootIn((t - Rational(1, 2)) * (t - Rational(1, 2)), 0, 1));
  EXPECT_FALSE(HasRootIn(t * t + 1, -5, 5));
  EXPECT_TRUE(HasRootIn(Polynomial(), 0, 1));
  EXPECT_FALSE(HasRootIn(Polynomial(Rational(3)), 0, 1));
  EXPECT_THROW(HasRootIn(t * t * t, 0, 1), Error);
  EXPECT_THROW(HasRootIn(Polynomial::Variable(1), 0, 1), Error);
}

}  // namespace
}  // namespace cutlab
