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

#include "cutlab/sensitivity.hpp"

#include <set>
#include <sstream>

#include "cutlab/error.hpp"
#include "cutlab/linalg.hpp"
#include "cutlab/rng.hpp"

namespace cutlab {
namespace {

// Calls f on every increasing k-subset of {0..n-1}, lexicographically.
template <typename F>
void ForEachSubset(Eigen::Index n, Eigen::Index k, F&& f) {
  if (k > n || k < 0) return;
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    Eigen::Index i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (Eigen::Index j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool SameRow(const Constraint& a, const Constraint& b) {
  return a.rhs == b.rhs && Equal(a.coeffs, b.coeffs);
}

const LpOptimal& RequireOptimal(const LpOutcome& out) {
  if (!IsOptimal(out)) {
    throw Error(ErrorKind::kInvalidArgument, "LP has no finite optimum");
  }
  return std::get<LpOptimal>(out);
}

// Square system: the rows of `face` followed by the cuts.
void Stack(const std::vector<Constraint>& h, const FaceId& face,
           const std::vector<CutPlane>& cuts, Eigen::Index n, RMatrix& a, RVector& b) {
  a = ZeroMatrix(n, n);
  b = ZeroVector(n);
  Eigen::Index r = 0;
  for (Eigen::Index i : face) {
    a.row(r) = h[i].coeffs.transpose();
    b(r++) = h[i].rhs;
  }
  for (const CutPlane& cut : cuts) {
    a.row(r) = cut.alpha.transpose();
    b(r++) = cut.beta;
  }
}

// Everything VerifyCut needs that does not depend on the cut.
class Verifier {
 public:
  explicit Verifier(const LinearProgram& lp)
      : lp_(lp), opt_(RequireOptimal(Solve(lp))) {
    for (const EdgeId& e : LpEdges(lp)) halfspaces_.push_back(EdgeHitHalfspaces(lp, e));
  }

  RegionWitness Check(const RVector& alpha, const Rational& beta) const {
    RegionWitness w{alpha, beta, Regime::kUnchanged, std::nullopt, false, false};
    const LpOutcome out = Solve(AddConstraints(lp_, {{alpha, Sense::kLe, beta}}));
    if (Dot(alpha, opt_.vertex) <= beta) {
      if (IsOptimal(out)) {
        const LpOptimal& o = std::get<LpOptimal>(out);
        w.verified = o.value == opt_.value;
        w.vertex_match = Equal(o.vertex, opt_.vertex);
      }
      return w;
    }

    RVector point(alpha.size() + 1);
    point.head(alpha.size()) = alpha;
    point(alpha.size()) = beta;
    std::optional<Rational> best;
    for (const EdgeHalfspaces& hs : halfspaces_) {
      if (!hs.Contains(point)) continue;
      const RVector x = ClosedForm(lp_, hs.edge, alpha, beta);
      const Rational z = Dot(lp_.objective, x);
      const bool match = IsOptimal(out) && Equal(x, std::get<LpOptimal>(out).vertex);
      // Prefer the edge that reproduces the simplex vertex, else the best.
      if (!best || z > *best || (z == *best && match && !w.vertex_match)) {
        best = z;
        w.edge = hs.edge;
        w.vertex_match = match;
      }
    }
    if (!IsOptimal(out)) {
      w.regime = Regime::kEmpty;
      w.verified = !best.has_value();
      w.edge.reset();
      return w;
    }
    w.regime = Regime::kActiveEdge;
    w.verified = best && *best == std::get<LpOptimal>(out).value;
    return w;
  }

 private:
  const LinearProgram& lp_;
  LpOptimal opt_;
  std::vector<EdgeHalfspaces> halfspaces_;
};

Rational Norm1(const RVector& v) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += abs(v(i));
  return s;
}

// Rescales so the first nonzero coefficient is 1. A negative scale flips
// every sign of the form at once, which leaves cell membership unchanged.
AffineForm Normalize(AffineForm f) {
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs(i) == 0) continue;
    const Rational s = f.coeffs(i);
    f.coeffs /= s;
    f.constant /= s;
    break;
  }
  return f;
}

}  // namespace

std::vector<Constraint> HalfspaceRows(const LinearProgram& lp) {
  const Eigen::Index n = lp.num_vars();
  std::vector<Constraint> h;
  for (const Constraint& row : lp.rows) {
    switch (row.sense) {
      case Sense::kLe:
        h.push_back(row);
        break;
      case Sense::kGe:
        h.push_back({-row.coeffs, Sense::kLe, -row.rhs});
        break;
      case Sense::kEq:
        h.push_back({row.coeffs, Sense::kLe, row.rhs});
        h.push_back({-row.coeffs, Sense::kLe, -row.rhs});
        break;
    }
  }
  auto add_bound = [&](Constraint c) {
    for (const Constraint& existing : h) {
      if (SameRow(existing, c)) return;
    }
    h.push_back(std::move(c));
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    RVector e = ZeroVector(n);
    e(j) = -1;
    add_bound({e, Sense::kLe, 0});
  }
  for (Eigen::Index j = 0; j < n && j < static_cast<Eigen::Index>(lp.upper.size()); ++j) {
    if (!lp.upper[j]) continue;
    RVector e = ZeroVector(n);
    e(j) = 1;
    add_bound({e, Sense::kLe, *lp.upper[j]});
  }
  return h;
}

std::string ToString(const EdgeId& e) {
  std::string out = "{";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(e[i]);
  }
  return out + "}";
}

std::vector<EdgeId> LpEdges(const LinearProgram& lp) {
  const Eigen::Index n = lp.num_vars();
  const std::vector<Constraint> h = HalfspaceRows(lp);
  const auto m = static_cast<Eigen::Index>(h.size());
  std::vector<EdgeId> edges;
  ForEachSubset(m, n - 1, [&](const std::vector<Eigen::Index>& e) {
    RMatrix a(n - 1, n);
    for (Eigen::Index r = 0; r < n - 1; ++r) a.row(r) = h[e[r]].coeffs.transpose();
    if (Rank(a) != n - 1) return;
    // Line direction from signed maximal minors.
    RVector d(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      RMatrix minor(n - 1, n - 1);
      for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor.col(cc++) = a.col(c);
      }
      d(j) = (j % 2 ? -1 : 1) * Det(minor);
    }
    LinearProgram face;
    face.rows = h;
    for (Eigen::Index i : e) face.rows[i].sense = Sense::kEq;
    face.objective = d;
    const LpOutcome hi = Solve(face);
    if (IsInfeasible(hi)) return;
    face.objective = -d;
    const LpOutcome lo = Solve(face);
    if (IsOptimal(hi) && IsOptimal(lo) &&
        std::get<LpOptimal>(hi).value + std::get<LpOptimal>(lo).value <= 0) {
      return;  // touches the polytope in a single point
    }
    edges.push_back(e);
  });
  return edges;
}

RVector ClosedForm(const LinearProgram& lp, const EdgeId& e, const RVector& alpha,
                   const Rational& beta) {
  return MultiClosedForm(lp, e, {CutPlane{alpha, beta}});
}

SymbolicVertex SymbolicClosedForm(const LinearProgram& lp, const EdgeId& e) {
  const Eigen::Index n = lp.num_vars();
  if (static_cast<Eigen::Index>(e.size()) != n - 1) {
    throw Error(ErrorKind::kInvalidArgument, "edge needs n-1 rows");
  }
  const std::vector<Constraint> h = HalfspaceRows(lp);
  Matrix<Polynomial> a(n, n);
  std::vector<Polynomial> rhs;
  for (Eigen::Index r = 0; r < n - 1; ++r) {
    for (Eigen::Index j = 0; j < n; ++j) a(r, j) = Polynomial(h[e[r]].coeffs(j));
    rhs.emplace_back(h[e[r]].rhs);
  }
  for (Eigen::Index j = 0; j < n; ++j) a(n - 1, j) = Polynomial::Variable(static_cast<int>(j));
  rhs.push_back(Polynomial::Variable(static_cast<int>(n)));

  SymbolicVertex v;
  v.det = CofactorDet(a);
  for (Eigen::Index i = 0; i < n; ++i) {
    Matrix<Polynomial> ai = a;
    for (Eigen::Index r = 0; r < n; ++r) ai(r, i) = rhs[r];
    v.numer.push_back(CofactorDet(ai));
  }
  return v;
}

bool EdgeHalfspaces::Contains(const RVector& point) const {
  const Rational d = det.Evaluate(point);
  if (d == 0) return false;
  for (const auto& [row, g] : rows) {
    if (d * g.Evaluate(point) < 0) return false;
  }
  return true;
}

EdgeHalfspaces EdgeHitHalfspaces(const LinearProgram& lp, const EdgeId& e) {
  const std::vector<Constraint> h = HalfspaceRows(lp);
  const SymbolicVertex v = SymbolicClosedForm(lp, e);
  EdgeHalfspaces out{e, v.det, {}};
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(h.size()); ++i) {
    if (std::find(e.begin(), e.end(), i) != e.end()) continue;
    Polynomial g = Polynomial(h[i].rhs) * v.det;
    for (Eigen::Index j = 0; j < lp.num_vars(); ++j) {
      if (h[i].coeffs(j) != 0) g -= Polynomial(h[i].coeffs(j)) * v.numer[j];
    }
    out.rows.emplace_back(i, std::move(g));
  }
  return out;
}

Polynomial IndifferencePoly(const LinearProgram& lp, const EdgeId& e_p,
                            const EdgeId& e_q) {
  if (e_p == e_q) {
    throw Error(ErrorKind::kInvalidArgument, "indifference of an edge with itself");
  }
  const SymbolicVertex p = SymbolicClosedForm(lp, e_p);
  const SymbolicVertex q = SymbolicClosedForm(lp, e_q);
  Polynomial zp, zq;
  for (Eigen::Index i = 0; i < lp.num_vars(); ++i) {
    if (lp.objective(i) == 0) continue;
    zp += Polynomial(lp.objective(i)) * p.numer[i];
    zq += Polynomial(lp.objective(i)) * q.numer[i];
  }
  return zp * q.det - zq * p.det;
}

std::string SurfaceStore::Dump() const {
  std::ostringstream out;
  const auto names = CutVariableNames(n);
  for (const Surface& s : surfaces) {
    out << "surf deg=" << s.poly.Degree() << ' ' << s.poly.ToString(names) << '\n';
  }
  return out.str();
}

SurfaceStore BuildArrangement(const LinearProgram& lp) {
  const Eigen::Index n = lp.num_vars();
  if (n < 1 || n > 3 || lp.rows.size() > 12) {
    throw Error(ErrorKind::kBudgetExceeded,
                "arrangement needs 1 <= n <= 3 and at most 12 rows");
  }
  const LpOptimal opt = RequireOptimal(Solve(lp));
  SurfaceStore store;
  store.n = static_cast<int>(n);
  store.m = HalfspaceRows(lp).size();
  std::size_t mn = 1;
  for (Eigen::Index i = 0; i < n; ++i) mn *= store.m;
  store.hyperplane_bound = mn;
  store.surface_bound = mn * mn;

  std::set<std::map<Polynomial::Monomial, Rational>> seen;
  auto add = [&](const Polynomial& p, SurfaceKind kind) {
    if (p.Degree() == 0) return;  // empty or everywhere: no boundary
    const Polynomial norm = p.Normalized();
    if (!seen.insert(norm.terms()).second) return;
    store.surfaces.push_back({norm, kind});
    if (kind == SurfaceKind::kIndifference) {
      ++store.indifference;
    } else {
      ++store.hyperplanes;
    }
  };

  Polynomial separation = -Polynomial::Variable(static_cast<int>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    separation += Polynomial(opt.vertex(j)) * Polynomial::Variable(static_cast<int>(j));
  }
  add(separation, SurfaceKind::kSeparation);

  const std::vector<EdgeId> edges = LpEdges(lp);
  for (const EdgeId& e : edges) {
    for (const auto& [row, g] : EdgeHitHalfspaces(lp, e).rows) add(g, SurfaceKind::kEdgeBoundary);
  }
  for (std::size_t p = 0; p < edges.size(); ++p) {
    for (std::size_t q = p + 1; q < edges.size(); ++q) {
      add(IndifferencePoly(lp, edges[p], edges[q]), SurfaceKind::kIndifference);
    }
  }
  return store;
}

RegionWitness VerifyCut(const LinearProgram& lp, const RVector& alpha,
                        const Rational& beta) {
  return Verifier(lp).Check(alpha, beta);
}

std::vector<RegionWitness> VerifyClosedForm(const LinearProgram& lp, int trials,
                                            std::uint64_t seed) {
  const Verifier verifier(lp);
  const Eigen::Index n = lp.num_vars();
  std::vector<RegionWitness> out;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(DeriveSeed(seed, static_cast<std::uint64_t>(t)));
    RVector alpha(n);
    for (Eigen::Index j = 0; j < n; ++j) alpha(j) = Rational(rng.UniformInt(-128, 128), 64);
    const Rational beta(rng.UniformInt(-128, 128), 64);
    out.push_back(verifier.Check(alpha, beta));
  }
  return out;
}

RVector MultiClosedForm(const LinearProgram& lp, const FaceId& f,
                        const std::vector<CutPlane>& cuts) {
  const Eigen::Index n = lp.num_vars();
  if (cuts.size() > 2 || static_cast<Eigen::Index>(f.size() + cuts.size()) != n) {
    throw Error(ErrorKind::kInvalidArgument, "need |F| + |cuts| = n with at most two cuts");
  }
  for (const CutPlane& cut : cuts) {
    if (cut.alpha.size() != n) throw Error(ErrorKind::kDimensionMismatch, "cut length");
  }
  RMatrix a;
  RVector b;
  Stack(HalfspaceRows(lp), f, cuts, n, a, b);
  if (Det(a) == 0) {
    throw Error(ErrorKind::kSingularAugmentedSystem, "det(A_{F,alpha}) = 0");
  }
  return CramerSolve(a, b);
}

std::optional<FaceVertex> FaceSearchOptimum(const LinearProgram& lp,
                                            const std::vector<CutPlane>& cuts) {
  const Eigen::Index n = lp.num_vars();
  const std::vector<Constraint> h = HalfspaceRows(lp);
  std::optional<FaceVertex> best;
  const auto k_max = std::min<Eigen::Index>(static_cast<Eigen::Index>(cuts.size()), n);
  for (Eigen::Index k = 0; k <= k_max; ++k) {
    ForEachSubset(static_cast<Eigen::Index>(cuts.size()), k,
                  [&](const std::vector<Eigen::Index>& s) {
      std::vector<CutPlane> binding;
      for (Eigen::Index i : s) binding.push_back(cuts[i]);
      ForEachSubset(static_cast<Eigen::Index>(h.size()), n - k,
                    [&](const std::vector<Eigen::Index>& f) {
        RMatrix a;
        RVector b;
        Stack(h, f, binding, n, a, b);
        if (Det(a) == 0) return;
        const RVector x = CramerSolve(a, b);
        for (const Constraint& row : h) {
          if (!row.SatisfiedBy(x)) return;
        }
        for (const CutPlane& cut : cuts) {
          if (!cut.SatisfiedBy(x)) return;
        }
        const Rational z = Dot(lp.objective, x);
        if (best && z <= best->value) return;
        best = FaceVertex{f, {}, x, z};
        for (Eigen::Index i : s) best->binding_cuts.push_back(static_cast<std::size_t>(i));
      });
    });
  }
  return best;
}

Polynomial AffineForm::ToPolynomial() const {
  Polynomial p(-constant);
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (coeffs(i) != 0) p += Polynomial(coeffs(i)) * Polynomial::Variable(static_cast<int>(i));
  }
  return p;
}

GmiArrangementResult GmiArrangement(const IPInstance& ip_eq, const Rational& U,
                                    std::size_t budget) {
  for (const Constraint& row : ip_eq.rows) {
    if (row.sense != Sense::kEq) {
      throw Error(ErrorKind::kNotEqualityForm, "floor arrangement needs equality rows");
    }
  }
  if (U < 0) throw Error(ErrorKind::kInvalidArgument, "U must be >= 0");
  const Eigen::Index m = ip_eq.num_rows();
  const Eigen::Index n = ip_eq.num_vars();
  RVector b(m);
  for (Eigen::Index r = 0; r < m; ++r) b(r) = ip_eq.rows[r].rhs;
  auto column = [&](Eigen::Index i) {
    RVector a(m);
    for (Eigen::Index r = 0; r < m; ++r) a(r) = ip_eq.rows[r].coeffs(i);
    return a;
  };
  // floor(u·v) ranges over [floor(-U|v|_1), floor(U|v|_1)] on the box.
  auto levels = [&](const RVector& v) {
    const Rational reach = U * Norm1(v);
    return std::pair<Integer, Integer>{Floor(-reach), Floor(reach)};
  };
  const auto [b_lo, b_hi] = levels(b);

  // Count first so that oversized requests fail before allocating.
  Integer total = b_hi - b_lo + 1;
  Rational a_norm = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const RVector a = column(i);
    a_norm = std::max(a_norm, Norm1(a));
    const auto [lo, hi] = levels(a);
    total += (hi - lo + 1) + (hi - lo + 1) + (b_hi - b_lo + 1) - 1;
  }
  if (total > Integer(budget)) {
    throw Error(ErrorKind::kBudgetExceeded,
                "floor arrangement needs " + total.str() + " hyperplanes");
  }

  GmiArrangementResult out;
  std::set<std::string> seen;
  auto add = [&](AffineForm f, std::size_t& counter) {
    if (Equal(f.coeffs, ZeroVector(m))) return;  // constant sign everywhere
    f = Normalize(std::move(f));
    if (!seen.insert(ToString(f.coeffs) + "|" + ToString(f.constant)).second) return;
    out.hyperplanes.push_back(std::move(f));
    ++counter;
  };
  for (Integer k = b_lo; k <= b_hi; ++k) add({b, Rational(k)}, out.rhs_levels);
  for (Eigen::Index i = 0; i < n; ++i) {
    const RVector a = column(i);
    const auto [lo, hi] = levels(a);
    for (Integer k = lo; k <= hi; ++k) add({a, Rational(k)}, out.column_levels);
    // u·(a_i - b) = k_i - k_0; pairs with equal difference coincide.
    const RVector diff = a - b;
    for (Integer d = lo - b_hi; d <= hi - b_lo; ++d) add({diff, Rational(d)}, out.comparisons);
  }

  const Rational bn = Norm1(b);
  const Rational col = 2 * U * a_norm + 1;
  const Rational rhs = 2 * U * bn + 1;
  out.bound = Ceil(n * col * rhs + n * col + rhs).convert_to<std::size_t>();
  return out;
}

std::vector<int> SignVector(const std::vector<AffineForm>& forms, const RVector& u) {
  std::vector<int> s;
  s.reserve(forms.size());
  for (const AffineForm& f : forms) {
    const Rational v = f.Evaluate(u);
    s.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
  }
  return s;
}

GmiTuple GmiTupleAt(const IPInstance& ip_eq, const RVector& u) {
  const Eigen::Index m = ip_eq.num_rows();
  if (u.size() != m) throw Error(ErrorKind::kDimensionMismatch, "multiplier length");
  Rational ub = 0;
  for (Eigen::Index r = 0; r < m; ++r) ub += u(r) * ip_eq.rows[r].rhs;
  GmiTuple t;
  t.rhs_floor = Floor(ub);
  const Rational f0 = ub - Rational(t.rhs_floor);
  for (Eigen::Index i = 0; i < ip_eq.num_vars(); ++i) {
    Rational ua = 0;
    for (Eigen::Index r = 0; r < m; ++r) ua += u(r) * ip_eq.rows[r].coeffs(i);
    const Integer fl = Floor(ua);
    t.column_floors.push_back(fl);
    t.below.push_back(ua - Rational(fl) <= f0);
  }
  return t;
}

}  // namespace cutlab
