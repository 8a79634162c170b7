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

// Sparse multivariate polynomials with rational coefficients. Usable as an
// Eigen scalar so that symbolic determinants go through CofactorDet.

#ifndef CUTLAB_POLYNOMIAL_HPP_
#define CUTLAB_POLYNOMIAL_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cutlab/rational.hpp"

namespace cutlab {

class Polynomial {
 public:
  // Exponent per variable with trailing zeros trimmed; {} is the constant
  // monomial.
  using Monomial = std::vector<int>;

  Polynomial() = default;
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT: Eigen needs Scalar(0)
  Polynomial(const Rational& c);                  // NOLINT
  static Polynomial Variable(int index);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool IsZero() const { return terms_.empty(); }
  int Degree() const;
  /// Highest variable index that occurs, plus one.
  int NumVariables() const;

  Rational Evaluate(const RVector& point) const;
  /// Coefficient of the monomial.
  Rational Coefficient(const Monomial& m) const;

  /// Divides by the coefficient of the first monomial in map order, so that
  /// nonzero rational multiples share one representative.
  Polynomial Normalized() const;
  /// p = lambda * q for some nonzero rational lambda.
  bool ProportionalTo(const Polynomial& q) const;

  /// Substitutes variable k by subs[k] (a univariate-or-not polynomial).
  Polynomial Substitute(const std::vector<Polynomial>& subs) const;

  /// "a1^2=1 a1*b=-1 1=3"; name(k) names variable k.
  std::string ToString(const std::function<std::string(int)>& name) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  void Add(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// Names a1..an for the cut coefficients and b for the right-hand side
/// (variable n).
std::function<std::string(int)> CutVariableNames(int n);
/// u1..um.
std::string MultiplierName(int k);

/// Whether a univariate polynomial in variable 0 of degree at most 2 has a
/// root in [lo, hi], decided exactly. Throws kInvalidArgument above degree 2
/// or when other variables appear.
bool HasRootIn(const Polynomial& p, const Rational& lo, const Rational& hi);

}  // namespace cutlab

namespace Eigen {
template <>
struct NumTraits<cutlab::Polynomial> : GenericNumTraits<cutlab::Polynomial> {
  using Real = cutlab::Polynomial;
  using NonInteger = cutlab::Polynomial;
  using Nested = cutlab::Polynomial;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 200,
  };
};
}  // namespace Eigen

#endif  // CUTLAB_POLYNOMIAL_HPP_
