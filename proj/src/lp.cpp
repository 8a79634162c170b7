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

#include "cutlab/lp.hpp"

#include <string>

#include "cutlab/error.hpp"
#include "cutlab/linalg.hpp"

namespace cutlab {

std::string_view SenseName(Sense s) {
  switch (s) {
    case Sense::kLe: return "LE";
    case Sense::kEq: return "EQ";
    case Sense::kGe: return "GE";
  }
  return "?";
}

Sense ParseSense(std::string_view text) {
  if (text == "LE" || text == "<=") return Sense::kLe;
  if (text == "EQ" || text == "=") return Sense::kEq;
  if (text == "GE" || text == ">=") return Sense::kGe;
  throw Error(ErrorKind::kParseError, "unknown sense '" + std::string(text) + "'");
}

bool Constraint::SatisfiedBy(const RVector& x) const {
  const Rational lhs = Dot(coeffs, x);
  switch (sense) {
    case Sense::kLe: return lhs <= rhs;
    case Sense::kEq: return lhs == rhs;
    case Sense::kGe: return lhs >= rhs;
  }
  return false;
}

bool LinearProgram::IsFeasible(const RVector& x) const {
  if (x.size() != num_vars()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) < 0) return false;
    if (!upper.empty() && upper[j] && x(j) > *upper[j]) return false;
  }
  for (const Constraint& row : rows) {
    if (!row.SatisfiedBy(x)) return false;
  }
  return true;
}

namespace {

// Dense tableau with rows 0..m-1 for constraints and row m for reduced costs;
// the last column holds the right-hand side. Reduced cost r_j < 0 marks an
// improving column for maximization.
class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols)
      : t_(ZeroMatrix(rows + 1, cols + 1)),
        basis_(static_cast<std::size_t>(rows), -1),
        m_(rows),
        cols_(cols) {}

  Rational& at(Eigen::Index i, Eigen::Index j) { return t_(i, j); }
  const Rational& at(Eigen::Index i, Eigen::Index j) const { return t_(i, j); }
  Rational& rhs(Eigen::Index i) { return t_(i, cols_); }
  Rational& cost(Eigen::Index j) { return t_(m_, j); }
  Eigen::Index rows() const { return m_; }
  Eigen::Index cols() const { return cols_; }
  std::vector<Eigen::Index>& basis() { return basis_; }

  void Pivot(Eigen::Index r, Eigen::Index q) {
    const Rational inv = 1 / t_(r, q);
    nonzero_.clear();
    for (Eigen::Index j = 0; j <= cols_; ++j) {
      if (t_(r, j).is_zero()) continue;
      t_(r, j) *= inv;
      nonzero_.push_back(j);
    }
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r || t_(i, q).is_zero()) continue;
      const Rational f = t_(i, q);
      for (Eigen::Index j : nonzero_) t_(i, j) -= f * t_(r, j);
    }
    basis_[static_cast<std::size_t>(r)] = q;
  }

  enum class Status { kOptimal, kUnbounded };

  // Bland's rule over columns [0, allowed).
  Status Run(Eigen::Index allowed) {
    for (;;) {
      Eigen::Index q = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (t_(m_, j) < 0) {
          q = j;
          break;
        }
      }
      if (q < 0) return Status::kOptimal;
      Eigen::Index r = -1;
      Rational best;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (t_(i, q) <= 0) continue;
        Rational ratio = t_(i, cols_) / t_(i, q);
        if (r < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r < 0) return Status::kUnbounded;
      Pivot(r, q);
    }
  }

  void DropRow(Eigen::Index r) {
    RMatrix next(m_, cols_ + 1);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      next.row(k++) = t_.row(i);
    }
    t_ = std::move(next);
    basis_.erase(basis_.begin() + r);
    --m_;
  }

 private:
  RMatrix t_;
  std::vector<Eigen::Index> basis_;
  std::vector<Eigen::Index> nonzero_;
  Eigen::Index m_;
  Eigen::Index cols_;
};

struct StandardRow {
  const RVector* coeffs;  // null for a unit upper-bound row
  Eigen::Index unit = -1;
  Rational scale = 1;     // +1 or -1 after making rhs nonnegative
  Sense sense;
  Rational rhs;
};

}  // namespace

LpOutcome Solve(const LinearProgram& lp) {
  const Eigen::Index n = lp.num_vars();
  std::vector<StandardRow> rows;
  rows.reserve(lp.rows.size() + lp.upper.size());
  for (const Constraint& c : lp.rows) {
    if (c.coeffs.size() != n) {
      throw Error(ErrorKind::kDimensionMismatch, "row length differs from n");
    }
    rows.push_back({&c.coeffs, -1, 1, c.sense, c.rhs});
  }
  for (std::size_t j = 0; j < lp.upper.size(); ++j) {
    if (lp.upper[j]) {
      rows.push_back({nullptr, static_cast<Eigen::Index>(j), 1, Sense::kLe,
                      *lp.upper[j]});
    }
  }
  Eigen::Index num_slack = 0;
  Eigen::Index num_art = 0;
  for (StandardRow& r : rows) {
    if (r.rhs < 0) {
      r.scale = -1;
      r.rhs = -r.rhs;
      if (r.sense == Sense::kLe) {
        r.sense = Sense::kGe;
      } else if (r.sense == Sense::kGe) {
        r.sense = Sense::kLe;
      }
    }
    if (r.sense != Sense::kEq) ++num_slack;
    if (r.sense != Sense::kLe) ++num_art;
  }

  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index art_begin = n + num_slack;
  Tableau tab(m, art_begin + num_art);
  Eigen::Index slack = n;
  Eigen::Index art = art_begin;
  for (Eigen::Index i = 0; i < m; ++i) {
    const StandardRow& r = rows[static_cast<std::size_t>(i)];
    if (r.coeffs != nullptr) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!(*r.coeffs)(j).is_zero()) tab.at(i, j) = r.scale * (*r.coeffs)(j);
      }
    } else {
      tab.at(i, r.unit) = r.scale;
    }
    tab.rhs(i) = r.rhs;
    if (r.sense == Sense::kLe) {
      tab.at(i, slack) = 1;
      tab.basis()[i] = slack++;
    } else {
      if (r.sense == Sense::kGe) tab.at(i, slack++) = -1;
      tab.at(i, art) = 1;
      tab.basis()[i] = art++;
    }
  }

  // Phase 1: maximize -sum(artificials).
  if (num_art > 0) {
    for (Eigen::Index j = art_begin; j < tab.cols(); ++j) tab.cost(j) = 1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis()[i] < art_begin) continue;
      for (Eigen::Index j = 0; j <= tab.cols(); ++j) {
        if (!tab.at(i, j).is_zero()) tab.cost(j) -= tab.at(i, j);
      }
    }
    tab.Run(tab.cols());
    if (tab.cost(tab.cols()) < 0) return LpInfeasible{};
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (Eigen::Index i = tab.rows() - 1; i >= 0; --i) {
      if (tab.basis()[i] < art_begin) continue;
      Eigen::Index q = -1;
      for (Eigen::Index j = 0; j < art_begin; ++j) {
        if (!tab.at(i, j).is_zero()) {
          q = j;
          break;
        }
      }
      if (q >= 0) {
        tab.Pivot(i, q);
      } else {
        tab.DropRow(i);
      }
    }
  }

  // Phase 2 over structural and slack columns only.
  for (Eigen::Index j = 0; j <= tab.cols(); ++j) tab.cost(j) = 0;
  for (Eigen::Index j = 0; j < n; ++j) tab.cost(j) = -lp.objective(j);
  for (Eigen::Index i = 0; i < tab.rows(); ++i) {
    const Eigen::Index b = tab.basis()[i];
    if (b >= n || lp.objective(b).is_zero()) continue;
    const Rational cb = lp.objective(b);
    for (Eigen::Index j = 0; j <= tab.cols(); ++j) {
      if (!tab.at(i, j).is_zero()) tab.cost(j) += cb * tab.at(i, j);
    }
  }
  if (tab.Run(art_begin) == Tableau::Status::kUnbounded) return LpUnbounded{};

  LpOptimal out;
  out.vertex = ZeroVector(n);
  for (Eigen::Index i = 0; i < tab.rows(); ++i) {
    const Eigen::Index b = tab.basis()[i];
    if (b < n) out.vertex(b) = tab.rhs(i);
  }
  out.value = Dot(lp.objective, out.vertex);
  out.basis = tab.basis();
  return out;
}

LinearProgram AddConstraints(const LinearProgram& lp,
                             const std::vector<Constraint>& extra) {
  LinearProgram out = lp;
  for (const Constraint& c : extra) {
    if (c.coeffs.size() != lp.num_vars()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "added row has " + std::to_string(c.coeffs.size()) +
                      " coefficients, LP has " +
                      std::to_string(lp.num_vars()) + " variables");
    }
    out.rows.push_back(c);
  }
  return out;
}

std::vector<RVector> BasisMultipliers(const LinearProgram& lp,
                                      const LpOptimal& outcome) {
  for (const Constraint& c : lp.rows) {
    if (c.sense != Sense::kEq) {
      throw Error(ErrorKind::kNotEqualityForm, "LP has an inequality row");
    }
  }
  for (const auto& u : lp.upper) {
    if (u) throw Error(ErrorKind::kNotEqualityForm, "LP has upper bounds");
  }
  const Eigen::Index n = lp.num_vars();
  const Eigen::Index m = static_cast<Eigen::Index>(lp.rows.size());
  const Eigen::Index k = static_cast<Eigen::Index>(outcome.basis.size());
  for (Eigen::Index b : outcome.basis) {
    if (b >= n) {
      throw Error(ErrorKind::kNotEqualityForm, "basis contains a slack column");
    }
  }
  // B = A restricted to basic columns; with redundant rows removed by the
  // solver it is m x k, k <= m, of full column rank.
  RMatrix basis_cols(m, k);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index p = 0; p < k; ++p) {
      basis_cols(i, p) = lp.rows[i].coeffs(outcome.basis[p]);
    }
  }
  const std::vector<Eigen::Index> keep = IndependentRows(basis_cols);
  RMatrix square(k, k);
  for (Eigen::Index r = 0; r < k; ++r) square.row(r) = basis_cols.row(keep[r]);
  const RMatrix inv = Inverse(square);

  std::vector<RVector> out;
  for (Eigen::Index p = 0; p < k; ++p) {
    if (IsInteger(outcome.vertex(outcome.basis[p]))) continue;
    RVector u = ZeroVector(m);
    for (Eigen::Index r = 0; r < k; ++r) u(keep[r]) = inv(p, r);
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace cutlab
