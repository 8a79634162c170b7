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

#include "cutlab/polynomial.hpp"

#include "cutlab/error.hpp"

#include <algorithm>
#include <numeric>

namespace cutlab {

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

Polynomial Polynomial::Variable(int index) {
  Polynomial p;
  Monomial m(static_cast<std::size_t>(index) + 1, 0);
  m.back() = 1;
  p.terms_[m] = 1;
  return p;
}

int Polynomial::Degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

int Polynomial::NumVariables() const {
  std::size_t n = 0;
  for (const auto& [m, c] : terms_) n = std::max(n, m.size());
  return static_cast<int>(n);
}

Rational Polynomial::Evaluate(const RVector& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (int e = 0; e < m[k]; ++e) t *= point(static_cast<Eigen::Index>(k));
    }
    total += t;
  }
  return total;
}

Rational Polynomial::Coefficient(const Monomial& m) const {
  Monomial key = m;
  while (!key.empty() && key.back() == 0) key.pop_back();
  const auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::Normalized() const {
  if (terms_.empty()) return *this;
  const Rational lead = terms_.begin()->second;
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_[m] = c / lead;
  return out;
}

bool Polynomial::ProportionalTo(const Polynomial& q) const {
  if (IsZero() || q.IsZero()) return false;
  return Normalized() == q.Normalized();
}

Polynomial Polynomial::Substitute(const std::vector<Polynomial>& subs) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial t(c);
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (int e = 0; e < m[k]; ++e) t *= subs[k];
    }
    out += t;
  }
  return out;
}

std::string Polynomial::ToString(const std::function<std::string(int)>& name) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += ' ';
    std::string mono;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += name(static_cast<int>(k));
      if (m[k] > 1) mono += '^' + std::to_string(m[k]);
    }
    out += (mono.empty() ? "1" : mono) + "=" + cutlab::ToString(c);
  }
  return out;
}

void Polynomial::Add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) Add(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) Add(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  Polynomial out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t k = 0; k < ma.size(); ++k) m[k] += ma[k];
      for (std::size_t k = 0; k < mb.size(); ++k) m[k] += mb[k];
      out.Add(m, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

std::function<std::string(int)> CutVariableNames(int n) {
  return [n](int k) { return k == n ? std::string("b") : "a" + std::to_string(k + 1); };
}

std::string MultiplierName(int k) { return "u" + std::to_string(k + 1); }

bool HasRootIn(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (p.NumVariables() > 1 || p.Degree() > 2) {
    throw Error(ErrorKind::kInvalidArgument,
                      "HasRootIn expects a univariate polynomial of degree <= 2");
  }
  if (p.IsZero()) return true;
  auto at = [&](const Rational& t) {
    RVector x(1);
    x(0) = t;
    return p.Evaluate(x);
  };
  const Rational flo = at(lo), fhi = at(hi);
  if (flo == 0 || fhi == 0 || (flo < 0) != (fhi < 0)) return true;
  const Rational a = p.Coefficient({2});
  if (a == 0) return false;
  // Same sign at both ends: only the vertex can dip across zero.
  const Rational v = -p.Coefficient({1}) / (2 * a);
  if (v <= lo || v >= hi) return false;
  const Rational fv = at(v);
  return fv == 0 || (fv < 0) != (flo < 0);
}

}  // namespace cutlab
