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

// Exact dense linear algebra over any exact field/ring scalar.

#ifndef CUTLAB_LINALG_HPP_
#define CUTLAB_LINALG_HPP_

#include <utility>

#include "cutlab/error.hpp"
#include "cutlab/rational.hpp"

namespace cutlab {

namespace internal {
template <typename Scalar>
bool IsZero(const Scalar& s) {
  return s == Scalar(0);
}
}  // namespace internal

/// Determinant by Bareiss fraction-free elimination. Every division is exact,
/// so Scalar may be Rational or Integer.
template <typename Derived>
typename Derived::Scalar Det(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kNonSquare, "determinant of non-square matrix");
  }
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  Matrix<Scalar> a = m;
  Scalar prev(1);
  bool negate = false;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (internal::IsZero(a(k, k))) {
      Eigen::Index p = k + 1;
      while (p < n && internal::IsZero(a(p, k))) ++p;
      if (p == n) return Scalar(0);
      a.row(k).swap(a.row(p));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = Scalar(0);
    }
    prev = a(k, k);
  }
  Scalar d = a(n - 1, n - 1);
  return negate ? Scalar(-d) : d;
}

/// Division-free determinant by cofactor expansion along the first row.
/// Works over any commutative ring, including polynomial scalars; cost is
/// O(n!) so keep n small.
template <typename Scalar>
Scalar CofactorDet(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kNonSquare, "determinant of non-square matrix");
  }
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Scalar total(0);
  Matrix<Scalar> minor(n - 1, n - 1);
  for (Eigen::Index c = 0; c < n; ++c) {
    if (internal::IsZero(m(0, c))) continue;
    for (Eigen::Index i = 1; i < n; ++i) {
      Eigen::Index cc = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, cc++) = m(i, j);
      }
    }
    Scalar term = m(0, c) * CofactorDet(minor);
    if (c % 2 == 0) {
      total = total + term;
    } else {
      total = total - term;
    }
  }
  return total;
}

/// x_i = det(a with column i replaced by b) / det(a).
RVector CramerSolve(const RMatrix& a, const RVector& b);

/// Rank by exact Gaussian elimination.
Eigen::Index Rank(const RMatrix& a);

/// Exact inverse by Gauss-Jordan; throws kSingular.
RMatrix Inverse(const RMatrix& a);

/// Indices of a maximal linearly independent subset of rows, chosen greedily
/// in index order.
std::vector<Eigen::Index> IndependentRows(const RMatrix& a);

}  // namespace cutlab

#endif  // CUTLAB_LINALG_HPP_
