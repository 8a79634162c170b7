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

// Linear programs over the rationals and an exact two-phase primal simplex
// with Bland's rule.

#ifndef CUTLAB_LP_HPP_
#define CUTLAB_LP_HPP_

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cutlab/rational.hpp"

namespace cutlab {

enum class Sense { kLe, kEq, kGe };

std::string_view SenseName(Sense s);  // "LE", "EQ", "GE"
Sense ParseSense(std::string_view text);

struct Constraint {
  RVector coeffs;
  Sense sense = Sense::kLe;
  Rational rhs = 0;

  bool SatisfiedBy(const RVector& x) const;
};

/// max objective·x subject to rows, x >= 0 and optional per-variable upper
/// bounds. Upper bounds are fed to the solver as ordinary rows.
struct LinearProgram {
  RVector objective;
  std::vector<Constraint> rows;
  std::vector<std::optional<Rational>> upper;  // empty or length n

  Eigen::Index num_vars() const { return objective.size(); }
  bool IsFeasible(const RVector& x) const;
};

struct LpOptimal {
  RVector vertex;
  Rational value;
  // Basic variable per surviving tableau row. Indices < n are structural
  // variables; larger indices are slack/surplus columns in row order.
  std::vector<Eigen::Index> basis;
};
struct LpInfeasible {};
struct LpUnbounded {};

using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

inline bool IsOptimal(const LpOutcome& o) {
  return std::holds_alternative<LpOptimal>(o);
}
inline bool IsInfeasible(const LpOutcome& o) {
  return std::holds_alternative<LpInfeasible>(o);
}

LpOutcome Solve(const LinearProgram& lp);

/// A copy of lp with extra rows appended; throws kDimensionMismatch.
LinearProgram AddConstraints(const LinearProgram& lp,
                             const std::vector<Constraint>& extra);

/// For an all-equality LP without upper bounds: one multiplier vector per
/// basic variable whose value is fractional, namely the matching row of the
/// basis inverse. Throws kNotEqualityForm.
std::vector<RVector> BasisMultipliers(const LinearProgram& lp,
                                      const LpOptimal& outcome);

}  // namespace cutlab

#endif  // CUTLAB_LP_HPP_
