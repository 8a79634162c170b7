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

// Gomory mixed-integer and Chvatal-Gomory cuts, brute-force validity, and
// parallelism/efficacy scoring for root cut selection.

#ifndef CUTLAB_CUTS_HPP_
#define CUTLAB_CUTS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "cutlab/ip.hpp"
#include "cutlab/lp.hpp"
#include "cutlab/rational.hpp"

namespace cutlab {

/// alpha·x <= beta in the original variables of an instance.
struct CutPlane {
  RVector alpha;
  Rational beta;

  Constraint AsConstraint() const { return {alpha, Sense::kLe, beta}; }
  bool SatisfiedBy(const RVector& x) const { return Dot(alpha, x) <= beta; }
  bool operator==(const CutPlane& other) const {
    return beta == other.beta && Equal(alpha, other.alpha);
  }
};

/// "cut <alpha_1> ... <alpha_n> <= <beta>"
std::string ToString(const CutPlane& cut);
CutPlane ParseCut(std::string_view line);
/// One cut per non-comment line.
std::vector<CutPlane> ParseCuts(std::string_view text);

enum class BoundRows { kExclude, kInclude };

/// An all-equality copy of an instance. Variables are the originals followed
/// by one slack per converted row; slack k equals
/// sign_k * (rhs_k - coeffs_k·x) for every feasible x.
struct EqualityForm {
  struct Slack {
    RVector coeffs;  // source row, original variable space
    Rational rhs;
    int sign;        // +1 for a LE row, -1 for a GE row
  };

  IPInstance ip;
  Eigen::Index original_vars = 0;
  std::vector<Slack> slacks;

  /// All rows EQ, x >= 0, no upper bounds (bounds either became rows or are
  /// dropped).
  LinearProgram Relaxation() const;

  /// Extended point (x, s(x)).
  RVector Extend(const RVector& x) const;

  /// Rewrites coeffs·(x, s) <sense> rhs over extended variables into the
  /// original variables by substituting every slack.
  Constraint ToOriginalSpace(const RVector& coeffs, const Rational& rhs,
                             Sense sense) const;
};

/// LE and GE rows gain a slack (+1 / -1); EQ rows are kept. With kInclude,
/// each finite upper bound becomes a row x_j + s = u_j as well.
EqualityForm ToEqualityForm(const IPInstance& ip,
                            BoundRows bounds = BoundRows::kExclude);

/// Wraps an instance whose rows are already all EQ; throws kNotEqualityForm.
EqualityForm AsEqualityForm(const IPInstance& ip);

/// GMI cut for multiplier u over the equality rows, returned in original
/// variables. Throws kDimensionMismatch on a bad u length and kDegenerateCut
/// when frac(u·b) = 0.
CutPlane GmiCut(const EqualityForm& eq, const RVector& u);

/// Cuts for u_1 (length m), u_2 (length m+1), ...; each step appends the
/// aggregated row u_k·A~ = u_k·b~ to the system before the next cut.
std::vector<CutPlane> SequentialGmi(const EqualityForm& eq,
                                    const std::vector<RVector>& us);

/// floor(u·A) x <= floor(u·b) over the rows of ip as written. u must be
/// >= 0 on LE rows and <= 0 on GE rows (kInvalidArgument otherwise).
CutPlane CgCut(const IPInstance& ip, const RVector& u);
/// Same over the equality rows, returned in original variables; any sign.
CutPlane CgCut(const EqualityForm& eq, const RVector& u);

/// alpha·x <= beta for every integer point of ip (brute force).
bool IsValidCut(const IPInstance& ip, const CutPlane& cut,
                std::uint64_t cap = kDefaultEnumerationCap);

struct ScoredCut {
  CutPlane cut;
  double parallelism = 0;  // |c·alpha| / (|c| |alpha|), in [0, 1]
  double efficacy = 0;     // (alpha·x_lp - beta) / |alpha|
};

std::vector<ScoredCut> ScoreCuts(const std::vector<CutPlane>& pool,
                                 const RVector& objective, const RVector& x_lp);

/// mu·parallelism + (1-mu)·efficacy; mu = 0 or 1 selects a single score even
/// when the other one is infinite.
double WeightedScore(const ScoredCut& s, double mu);

/// Indices into `scored` of the top k by weighted score, ties to the lower
/// index.
std::vector<std::size_t> SelectCutIndices(const std::vector<ScoredCut>& scored,
                                          double mu, std::size_t k);
std::vector<CutPlane> SelectCuts(const std::vector<ScoredCut>& scored, double mu,
                                 std::size_t k);

/// The root pool: one GMI and one CG cut per fractional basic row of the
/// optimal tableau of the equality-form relaxation (bound rows included),
/// with duplicates and degenerate GMI multipliers dropped.
struct RootPool {
  std::vector<CutPlane> cuts;
  RVector x_lp;  // relaxation optimum, original variables
  bool lp_optimal = false;
};
RootPool BuildRootPool(const IPInstance& ip);

}  // namespace cutlab

#endif  // CUTLAB_CUTS_HPP_
