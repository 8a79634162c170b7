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

#include "cutlab/rational.hpp"

#include <cctype>

#include "cutlab/error.hpp"

namespace cutlab {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonSquare: return "NonSquare";
    case ErrorKind::kSingular: return "Singular";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNotEqualityForm: return "NotEqualityForm";
    case ErrorKind::kUnboundedRelaxation: return "UnboundedRelaxation";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kEvenN: return "EvenN";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kDegenerateCut: return "DegenerateCut";
    case ErrorKind::kIntegralCoordinate: return "IntegralCoordinate";
    case ErrorKind::kSingularAugmentedSystem: return "SingularAugmentedSystem";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Integer Floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.backend().data(), mpq_numref(r.backend().data()),
             mpq_denref(r.backend().data()));
  return q;
}

Integer Ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.backend().data(), mpq_numref(r.backend().data()),
             mpq_denref(r.backend().data()));
  return q;
}

Rational Frac(const Rational& r) { return r - Rational(Floor(r)); }

std::string ToString(const Rational& r) {
  if (IsInteger(r)) return Numerator(r).str();
  return Numerator(r).str() + "/" + Denominator(r).str();
}

namespace {

Integer ParseInteger(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw Error(ErrorKind::kParseError,
                "malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw Error(ErrorKind::kParseError,
                  "malformed rational '" + std::string(whole) + "'");
    }
  }
  Integer v(std::string(text.substr(i)));
  return negative ? Integer(-v) : v;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(ParseInteger(text, text));
  Integer num = ParseInteger(text.substr(0, slash), text);
  Integer den = ParseInteger(text.substr(slash + 1), text);
  if (den == 0) {
    throw Error(ErrorKind::kParseError,
                "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

RVector ParseRationalList(std::string_view text) {
  std::vector<Rational> values;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' &&
           !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    if (j > i) values.push_back(ParseRational(text.substr(i, j - i)));
    i = j;
  }
  RVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = values[k];
  }
  return v;
}

std::string ToString(const RVector& v, std::string_view sep) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += ToString(v(i));
  }
  return out;
}

RVector ZeroVector(Eigen::Index n) {
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 0;
  return v;
}

RMatrix ZeroMatrix(Eigen::Index rows, Eigen::Index cols) {
  RMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = 0;
  }
  return m;
}

bool IsIntegral(const RVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!IsInteger(v(i))) return false;
  }
  return true;
}

bool Equal(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return false;
  }
  return true;
}

}  // namespace cutlab
