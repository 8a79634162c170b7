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

#include "cutlab/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cutlab/error.hpp"

namespace cutlab {
namespace {

std::vector<std::string> Tokens(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

struct Aggregate {
  RVector coeffs;  // u·A over extended variables
  Rational rhs;    // u·b
};

Aggregate Combine(const std::vector<Constraint>& rows, const RVector& u,
                  Eigen::Index width) {
  if (u.size() != static_cast<Eigen::Index>(rows.size())) {
    throw Error(ErrorKind::kDimensionMismatch,
                "multiplier length " + std::to_string(u.size()) + " but " +
                    std::to_string(rows.size()) + " rows");
  }
  Aggregate agg{ZeroVector(width), 0};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational& ui = u(static_cast<Eigen::Index>(i));
    if (ui == 0) continue;
    for (Eigen::Index j = 0; j < width; ++j) {
      if (rows[i].coeffs(j) != 0) agg.coeffs(j) += ui * rows[i].coeffs(j);
    }
    agg.rhs += ui * rows[i].rhs;
  }
  return agg;
}

// pi·x >= f0 over extended variables, or kDegenerateCut.
Aggregate GmiFromAggregate(const Aggregate& agg) {
  const Rational f0 = Frac(agg.rhs);
  if (f0 == 0) {
    throw Error(ErrorKind::kDegenerateCut, "u·b is integral");
  }
  const Rational scale = f0 / (1 - f0);
  Aggregate cut{ZeroVector(agg.coeffs.size()), f0};
  for (Eigen::Index j = 0; j < agg.coeffs.size(); ++j) {
    const Rational f = Frac(agg.coeffs(j));
    cut.coeffs(j) = f <= f0 ? f : scale * (1 - f);
  }
  return cut;
}

CutPlane ToLe(const Constraint& c) {
  if (c.sense == Sense::kGe) return {RVector(-c.coeffs), -c.rhs};
  return {c.coeffs, c.rhs};
}

std::optional<Integer> SlackUpper(const RVector& a, const Rational& b, int sign,
                                  const std::vector<std::optional<Integer>>& upper) {
  // Largest value of sign * (b - a·x) over the bound box.
  Rational best = sign * b;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const Rational coef = -sign * a(j);
    if (coef <= 0) continue;
    if (!upper[j]) return std::nullopt;
    best += coef * Rational(*upper[j]);
  }
  const Integer f = Floor(best);
  return f < 0 ? Integer(0) : f;
}

}  // namespace

std::string ToString(const CutPlane& cut) {
  return "cut " + ToString(cut.alpha) + " <= " + ToString(cut.beta);
}

CutPlane ParseCut(std::string_view line) {
  const auto toks = Tokens(line);
  if (toks.size() < 3 || toks[0] != "cut" || toks[toks.size() - 2] != "<=") {
    throw Error(ErrorKind::kParseError, "expected 'cut a_1 ... a_n <= b'");
  }
  CutPlane cut;
  cut.alpha.resize(static_cast<Eigen::Index>(toks.size() - 3));
  for (std::size_t i = 1; i + 2 < toks.size(); ++i) {
    cut.alpha(static_cast<Eigen::Index>(i - 1)) = ParseRational(toks[i]);
  }
  cut.beta = ParseRational(toks.back());
  return cut;
}

std::vector<CutPlane> ParseCuts(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<CutPlane> cuts;
  int number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      cuts.push_back(ParseCut(line));
    } catch (const Error& e) {
      throw Error(ErrorKind::kParseError,
                  "line " + std::to_string(number) + ": " + e.what());
    }
  }
  return cuts;
}

LinearProgram EqualityForm::Relaxation() const {
  LinearProgram lp = ip.Relaxation();
  lp.upper.clear();
  return lp;
}

RVector EqualityForm::Extend(const RVector& x) const {
  RVector ext(original_vars + static_cast<Eigen::Index>(slacks.size()));
  ext.head(original_vars) = x;
  for (std::size_t k = 0; k < slacks.size(); ++k) {
    const Slack& s = slacks[k];
    ext(original_vars + static_cast<Eigen::Index>(k)) = s.sign * (s.rhs - Dot(s.coeffs, x));
  }
  return ext;
}

Constraint EqualityForm::ToOriginalSpace(const RVector& coeffs, const Rational& rhs,
                                         Sense sense) const {
  const Eigen::Index width = original_vars + static_cast<Eigen::Index>(slacks.size());
  if (coeffs.size() != width) {
    throw Error(ErrorKind::kDimensionMismatch, "cut length differs from extended n");
  }
  Constraint out{coeffs.head(original_vars), sense, rhs};
  // pi_s * s = pi_s * sign * (b - a·x)
  for (std::size_t k = 0; k < slacks.size(); ++k) {
    const Rational& p = coeffs(original_vars + static_cast<Eigen::Index>(k));
    if (p == 0) continue;
    const Slack& s = slacks[k];
    const Rational w = p * s.sign;
    for (Eigen::Index j = 0; j < original_vars; ++j) {
      if (s.coeffs(j) != 0) out.coeffs(j) -= w * s.coeffs(j);
    }
    out.rhs -= w * s.rhs;
  }
  return out;
}

EqualityForm ToEqualityForm(const IPInstance& ip, BoundRows bounds) {
  ip.Validate();
  const Eigen::Index n = ip.num_vars();

  std::vector<Constraint> source = ip.rows;
  if (bounds == BoundRows::kInclude) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!ip.upper[j]) continue;
      RVector e = ZeroVector(n);
      e(j) = 1;
      source.push_back({e, Sense::kLe, Rational(*ip.upper[j])});
    }
  }

  EqualityForm eq;
  eq.original_vars = n;
  for (const Constraint& row : source) {
    if (row.sense == Sense::kEq) continue;
    eq.slacks.push_back({row.coeffs, row.rhs, row.sense == Sense::kLe ? 1 : -1});
  }
  const Eigen::Index width = n + static_cast<Eigen::Index>(eq.slacks.size());

  eq.ip.direction = ip.direction;
  eq.ip.offset = ip.offset;
  eq.ip.objective = ZeroVector(width);
  eq.ip.objective.head(n) = ip.objective;
  eq.ip.upper = ip.upper;
  Eigen::Index slack = n;
  for (const Constraint& row : source) {
    RVector a = ZeroVector(width);
    a.head(n) = row.coeffs;
    if (row.sense != Sense::kEq) {
      const int sign = row.sense == Sense::kLe ? 1 : -1;
      a(slack++) = sign;
      eq.ip.upper.push_back(SlackUpper(row.coeffs, row.rhs, sign, ip.upper));
    }
    eq.ip.rows.push_back({a, Sense::kEq, row.rhs});
  }
  return eq;
}

EqualityForm AsEqualityForm(const IPInstance& ip) {
  ip.Validate();
  for (const Constraint& row : ip.rows) {
    if (row.sense != Sense::kEq) {
      throw Error(ErrorKind::kNotEqualityForm, "instance has an inequality row");
    }
  }
  EqualityForm eq;
  eq.ip = ip;
  eq.original_vars = ip.num_vars();
  return eq;
}

CutPlane GmiCut(const EqualityForm& eq, const RVector& u) {
  const Aggregate cut = GmiFromAggregate(Combine(eq.ip.rows, u, eq.ip.num_vars()));
  return ToLe(eq.ToOriginalSpace(cut.coeffs, cut.rhs, Sense::kGe));
}

std::vector<CutPlane> SequentialGmi(const EqualityForm& eq,
                                    const std::vector<RVector>& us) {
  std::vector<Constraint> rows = eq.ip.rows;
  const Eigen::Index width = eq.ip.num_vars();
  std::vector<CutPlane> cuts;
  for (std::size_t k = 0; k < us.size(); ++k) {
    const std::string where = "multiplier " + std::to_string(k + 1) + ": ";
    Aggregate agg;
    try {
      agg = Combine(rows, us[k], width);
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.what());
    }
    Aggregate cut;
    try {
      cut = GmiFromAggregate(agg);
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.what());
    }
    cuts.push_back(ToLe(eq.ToOriginalSpace(cut.coeffs, cut.rhs, Sense::kGe)));
    rows.push_back({agg.coeffs, Sense::kEq, agg.rhs});
  }
  return cuts;
}

CutPlane CgCut(const IPInstance& ip, const RVector& u) {
  if (u.size() != ip.num_rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "multiplier length differs from m");
  }
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const Sense s = ip.rows[i].sense;
    if ((s == Sense::kLe && u(i) < 0) || (s == Sense::kGe && u(i) > 0)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "multiplier " + std::to_string(i + 1) + " has the wrong sign for a " +
                      std::string(SenseName(s)) + " row");
    }
  }
  const Aggregate agg = Combine(ip.rows, u, ip.num_vars());
  CutPlane cut{ZeroVector(ip.num_vars()), Rational(Floor(agg.rhs))};
  for (Eigen::Index j = 0; j < cut.alpha.size(); ++j) {
    cut.alpha(j) = Rational(Floor(agg.coeffs(j)));
  }
  return cut;
}

CutPlane CgCut(const EqualityForm& eq, const RVector& u) {
  const Aggregate agg = Combine(eq.ip.rows, u, eq.ip.num_vars());
  RVector coeffs(agg.coeffs.size());
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) coeffs(j) = Rational(Floor(agg.coeffs(j)));
  return ToLe(eq.ToOriginalSpace(coeffs, Rational(Floor(agg.rhs)), Sense::kLe));
}

bool IsValidCut(const IPInstance& ip, const CutPlane& cut, std::uint64_t cap) {
  for (const RVector& p : EnumerateIntegerPoints(ip, cap)) {
    if (!cut.SatisfiedBy(p)) return false;
  }
  return true;
}

std::vector<ScoredCut> ScoreCuts(const std::vector<CutPlane>& pool,
                                 const RVector& objective, const RVector& x_lp) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double c_norm = 0;
  for (Eigen::Index j = 0; j < objective.size(); ++j) {
    c_norm += ToDouble(objective(j)) * ToDouble(objective(j));
  }
  c_norm = std::sqrt(c_norm);

  std::vector<ScoredCut> out;
  out.reserve(pool.size());
  for (const CutPlane& cut : pool) {
    ScoredCut s{cut, 0, 0};
    double a_norm = 0;
    for (Eigen::Index j = 0; j < cut.alpha.size(); ++j) {
      a_norm += ToDouble(cut.alpha(j)) * ToDouble(cut.alpha(j));
    }
    a_norm = std::sqrt(a_norm);
    // Dot products are exact; only the final quotient is rounded.
    const Rational violation = Dot(cut.alpha, x_lp) - cut.beta;
    if (a_norm > 0) {
      if (c_norm > 0) {
        s.parallelism = std::abs(ToDouble(Dot(objective, cut.alpha))) / (c_norm * a_norm);
      }
      s.efficacy = ToDouble(violation) / a_norm;
    } else {
      // 0 <= beta: infeasible when beta < 0, vacuous otherwise.
      s.efficacy = violation > 0 ? kInf : -kInf;
    }
    out.push_back(std::move(s));
  }
  return out;
}

double WeightedScore(const ScoredCut& s, double mu) {
  if (mu >= 1) return s.parallelism;
  if (mu <= 0) return s.efficacy;
  return mu * s.parallelism + (1 - mu) * s.efficacy;
}

std::vector<std::size_t> SelectCutIndices(const std::vector<ScoredCut>& scored,
                                          double mu, std::size_t k) {
  std::vector<double> w(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i) w[i] = WeightedScore(scored[i], mu);
  std::vector<std::size_t> idx(scored.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  if (idx.size() > k) idx.resize(k);
  return idx;
}

std::vector<CutPlane> SelectCuts(const std::vector<ScoredCut>& scored, double mu,
                                 std::size_t k) {
  std::vector<CutPlane> out;
  for (std::size_t i : SelectCutIndices(scored, mu, k)) out.push_back(scored[i].cut);
  return out;
}

RootPool BuildRootPool(const IPInstance& ip) {
  const EqualityForm eq = ToEqualityForm(ip, BoundRows::kInclude);
  const LinearProgram lp = eq.Relaxation();
  const LpOutcome out = Solve(lp);
  RootPool pool;
  if (!IsOptimal(out)) return pool;
  const LpOptimal& opt = std::get<LpOptimal>(out);
  pool.lp_optimal = true;
  pool.x_lp = opt.vertex.head(ip.num_vars());

  auto add = [&](CutPlane cut) {
    for (const CutPlane& c : pool.cuts) {
      if (c == cut) return;
    }
    pool.cuts.push_back(std::move(cut));
  };
  for (const RVector& u : BasisMultipliers(lp, opt)) {
    try {
      add(GmiCut(eq, u));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDegenerateCut) throw;
    }
    add(CgCut(eq, u));
  }
  return pool;
}

}  // namespace cutlab
