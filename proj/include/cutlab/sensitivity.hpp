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

// How the LP optimum moves when a cut alpha·x <= beta is added: the polytope's
// edges, the Cramer closed form of the new vertex on an edge, the halfspaces
// in (alpha, beta) where the cut actually hits that edge, and the degree-2
// surfaces where two edges give the same objective. Polynomials in (alpha,
// beta) use variables 0..n-1 for alpha and n for beta.
//
// Also the floor arrangement for GMI multipliers: hyperplanes in u-space
// inside which every floor and fractional-part comparison of a GMI cut is
// constant.

#ifndef CUTLAB_SENSITIVITY_HPP_
#define CUTLAB_SENSITIVITY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutlab/cuts.hpp"
#include "cutlab/ip.hpp"
#include "cutlab/lp.hpp"
#include "cutlab/polynomial.hpp"

namespace cutlab {

/// The polytope as LE rows: structural rows (GE negated, EQ as both
/// directions), then -x_j <= 0 unless an identical row is already present,
/// then x_j <= u_j for finite bounds.
std::vector<Constraint> HalfspaceRows(const LinearProgram& lp);

/// n-1 indices into HalfspaceRows, increasing.
using EdgeId = std::vector<Eigen::Index>;
/// n-k indices into HalfspaceRows for a k-cut vertex.
using FaceId = std::vector<Eigen::Index>;

std::string ToString(const EdgeId& e);

/// Index sets of size n-1 whose rows have rank n-1 and whose line meets the
/// polytope in a segment of positive length. Lexicographic order. Duplicate
/// rows give several index sets for one geometric edge; all are kept.
std::vector<EdgeId> LpEdges(const LinearProgram& lp);

/// Intersection of the edge's line with alpha·x = beta by Cramer's rule.
/// Throws kSingularAugmentedSystem when det(A_{E,alpha}) = 0.
RVector ClosedForm(const LinearProgram& lp, const EdgeId& e, const RVector& alpha,
                   const Rational& beta);

/// det(A_{E,alpha}) and det(A^i_{E,alpha,beta}) as polynomials in (alpha, beta).
struct SymbolicVertex {
  Polynomial det;
  std::vector<Polynomial> numer;
};
SymbolicVertex SymbolicClosedForm(const LinearProgram& lp, const EdgeId& e);

/// For each row i outside E, g_i = b_i·det - a_i·numer. The cut point lies
/// on the edge iff det != 0 and det·g_i >= 0 for every i.
struct EdgeHalfspaces {
  EdgeId edge;
  Polynomial det;
  std::vector<std::pair<Eigen::Index, Polynomial>> rows;

  /// point = (alpha_1..alpha_n, beta).
  bool Contains(const RVector& point) const;
};
EdgeHalfspaces EdgeHitHalfspaces(const LinearProgram& lp, const EdgeId& e);

/// c·numer_p·det_q - c·numer_q·det_p. Throws kInvalidArgument when e_p = e_q.
Polynomial IndifferencePoly(const LinearProgram& lp, const EdgeId& e_p,
                            const EdgeId& e_q);

enum class SurfaceKind { kSeparation, kEdgeBoundary, kIndifference };

struct SurfaceStore {
  struct Surface {
    Polynomial poly;  // normalized
    SurfaceKind kind;
  };
  int n = 0;
  std::size_t m = 0;  // halfspace rows
  std::vector<Surface> surfaces;
  std::size_t hyperplanes = 0;       // separation + edge boundaries, distinct
  std::size_t indifference = 0;      // distinct nonzero indifference surfaces
  std::size_t hyperplane_bound = 0;  // m^n
  std::size_t surface_bound = 0;     // m^(2n)

  /// One line per surface: "surf deg=<d> <mono>=<coeff> ...".
  std::string Dump() const;
};

/// Throws kBudgetExceeded unless n <= 3 and at most 12 structural rows.
SurfaceStore BuildArrangement(const LinearProgram& lp);

enum class Regime { kUnchanged, kActiveEdge, kEmpty };

struct RegionWitness {
  RVector alpha;
  Rational beta;
  Regime regime = Regime::kUnchanged;
  std::optional<EdgeId> edge;
  // The closed form (or x*_LP) is an optimum of the re-solved LP, exactly.
  bool verified = false;
  // ...and is the very vertex the simplex returned.
  bool vertex_match = false;
};

/// Samples cuts with components j/64, j in [-128, 128], from stream `seed`
/// and checks each against a fresh simplex solve.
std::vector<RegionWitness> VerifyClosedForm(const LinearProgram& lp, int trials,
                                            std::uint64_t seed);
RegionWitness VerifyCut(const LinearProgram& lp, const RVector& alpha,
                        const Rational& beta);

/// Cramer solve of A_F x = b_F stacked with alpha_j·x = beta_j (at most two
/// cuts). Throws kSingularAugmentedSystem or kInvalidArgument.
RVector MultiClosedForm(const LinearProgram& lp, const FaceId& f,
                        const std::vector<CutPlane>& cuts);

/// Best vertex of the polytope cut by `cuts`, found by trying every face and
/// every subset of binding cuts. nullopt when the cut polytope is empty.
struct FaceVertex {
  FaceId face;
  std::vector<std::size_t> binding_cuts;
  RVector point;
  Rational value;
};
std::optional<FaceVertex> FaceSearchOptimum(const LinearProgram& lp,
                                            const std::vector<CutPlane>& cuts);

/// coeffs·u - constant.
struct AffineForm {
  RVector coeffs;
  Rational constant;

  Rational Evaluate(const RVector& u) const { return Dot(coeffs, u) - constant; }
  Polynomial ToPolynomial() const;
};

struct GmiArrangementResult {
  std::vector<AffineForm> hyperplanes;
  std::size_t column_levels = 0;  // u·a_i = k_i
  std::size_t rhs_levels = 0;     // u·b = k_0
  std::size_t comparisons = 0;    // u·a_i - k_i = u·b - k_0
  std::size_t bound = 0;          // n·U^2·|A|_1·|b|_1 + n·U·|A|_1 + U·|b|_1, rounded up
};

/// Hyperplanes over u in [-U, U]^m for an all-equality instance; a_i are the
/// columns of A. Throws kNotEqualityForm and kBudgetExceeded.
GmiArrangementResult GmiArrangement(const IPInstance& ip_eq, const Rational& U,
                                    std::size_t budget = 100000);

/// -1, 0 or +1 per form.
std::vector<int> SignVector(const std::vector<AffineForm>& forms, const RVector& u);

/// (floor(u·a_i) for all i, floor(u·b), [f_i <= f_0] for all i).
struct GmiTuple {
  std::vector<Integer> column_floors;
  Integer rhs_floor;
  std::vector<bool> below;

  bool operator==(const GmiTuple&) const = default;
};
GmiTuple GmiTupleAt(const IPInstance& ip_eq, const RVector& u);

}  // namespace cutlab

#endif  // CUTLAB_SENSITIVITY_HPP_
