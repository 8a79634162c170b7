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

#include "cutlab/linalg.hpp"

namespace cutlab {

RVector CramerSolve(const RMatrix& a, const RVector& b) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kNonSquare, "Cramer solve needs a square matrix");
  }
  if (b.size() != a.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "rhs length differs from rows");
  }
  const Rational d = Det(a);
  if (d.is_zero()) throw Error(ErrorKind::kSingular, "zero determinant");
  RVector x(a.cols());
  RMatrix replaced = a;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    replaced.col(i) = b;
    x(i) = Det(replaced) / d;
    replaced.col(i) = a.col(i);
  }
  return x;
}

namespace {

// Row i is kept iff it is not in the span of the earlier kept rows.
std::vector<Eigen::Index> Eliminate(const RMatrix& m) {
  std::vector<Eigen::Index> independent;
  std::vector<std::pair<Eigen::Index, RVector>> basis;  // (pivot col, row)
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    RVector row = m.row(i).transpose();
    for (const auto& [col, brow] : basis) {
      if (row(col).is_zero()) continue;
      const Rational f = row(col);
      for (Eigen::Index j = 0; j < row.size(); ++j) {
        if (!brow(j).is_zero()) row(j) -= f * brow(j);
      }
    }
    Eigen::Index pivot = -1;
    for (Eigen::Index j = 0; j < row.size(); ++j) {
      if (!row(j).is_zero()) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) continue;
    const Rational inv = 1 / row(pivot);
    for (Eigen::Index j = 0; j < row.size(); ++j) row(j) *= inv;
    // Keep the basis fully reduced in the new pivot column.
    for (auto& [col, brow] : basis) {
      if (brow(pivot).is_zero()) continue;
      const Rational f = brow(pivot);
      for (Eigen::Index j = 0; j < row.size(); ++j) {
        if (!row(j).is_zero()) brow(j) -= f * row(j);
      }
    }
    basis.emplace_back(pivot, std::move(row));
    independent.push_back(i);
  }
  return independent;
}

}  // namespace

Eigen::Index Rank(const RMatrix& a) {
  return static_cast<Eigen::Index>(Eliminate(a).size());
}

std::vector<Eigen::Index> IndependentRows(const RMatrix& a) {
  return Eliminate(a);
}

RMatrix Inverse(const RMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kNonSquare, "inverse of non-square matrix");
  }
  const Eigen::Index n = a.rows();
  RMatrix m = a;
  RMatrix inv = ZeroMatrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) inv(i, i) = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) throw Error(ErrorKind::kSingular, "matrix is singular");
    if (p != k) {
      m.row(k).swap(m.row(p));
      inv.row(k).swap(inv.row(p));
    }
    const Rational pinv = 1 / m(k, k);
    for (Eigen::Index j = 0; j < n; ++j) {
      m(k, j) *= pinv;
      inv(k, j) *= pinv;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || m(i, k).is_zero()) continue;
      const Rational f = m(i, k);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!m(k, j).is_zero()) m(i, j) -= f * m(k, j);
        if (!inv(k, j).is_zero()) inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace cutlab
