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

// Exact scalar and dense container types. Rational is GMP's mpq_t behind
// Boost.Multiprecision; mpq values are kept canonical (reduced, positive
// denominator, zero as 0/1), so structural equality is value equality.

#ifndef CUTLAB_RATIONAL_HPP_
#define CUTLAB_RATIONAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace cutlab {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RMatrix = Matrix<Rational>;
using RVector = Vector<Rational>;

inline Integer Numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Integer Denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline bool IsInteger(const Rational& r) { return Denominator(r) == 1; }

// Floor toward negative infinity.
Integer Floor(const Rational& r);
Integer Ceil(const Rational& r);
// r - floor(r), always in [0, 1).
Rational Frac(const Rational& r);

// Canonical text: "p/q", or "p" when q = 1.
std::string ToString(const Rational& r);
// Accepts "p", "p/q" with optional sign; result is reduced. Throws
// Error(kParseError) on malformed text or zero denominator.
Rational ParseRational(std::string_view text);

double ToDouble(const Rational& r);

// Comma- or whitespace-separated list of rationals.
RVector ParseRationalList(std::string_view text);
std::string ToString(const RVector& v, std::string_view sep = " ");

RVector ZeroVector(Eigen::Index n);
RMatrix ZeroMatrix(Eigen::Index rows, Eigen::Index cols);

inline Rational Dot(const RVector& a, const RVector& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!a(i).is_zero() && !b(i).is_zero()) s += a(i) * b(i);
  }
  return s;
}

bool IsIntegral(const RVector& v);
bool Equal(const RVector& a, const RVector& b);

}  // namespace cutlab

#endif  // CUTLAB_RATIONAL_HPP_
