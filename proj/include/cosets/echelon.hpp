#pragma once

// Exact elimination: reduced row echelon form, kernels, inverses and
// fraction-free determinants over Q and Q(i).

#include <utility>
#include <vector>

#include "cosets/matrix.hpp"

namespace cosets {

template <typename K>
struct Rref {
  Mat<K> reduced;             // one row per pivot; zero rows are dropped
  std::vector<Index> pivots;  // strictly increasing pivot column indices
  Index rank() const { return reduced.rows(); }
};

/// Gauss-Jordan with exact division.  The output is the unique reduced
/// row-echelon form of the row space, restricted to its nonzero rows.
template <typename K>
Rref<K> rref(Mat<K> m) {
  const Index rows = m.rows(), cols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index sel = -1;
    for (Index i = r; i < rows; ++i) {
      if (m(i, c) != K(0)) { sel = i; break; }
    }
    if (sel < 0) continue;
    if (sel != r) m.row(sel).swap(m.row(r));
    K inv = K(1) / m(r, c);
    for (Index j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == K(0)) continue;
      K f = m(i, c);
      for (Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Rref<K> out;
  out.reduced = m.topRows(r);
  out.pivots = std::move(pivots);
  return out;
}

template <typename K>
Index rankOf(const Mat<K>& m) {
  return rref(m).rank();
}

/// Basis of {v : m v = 0}, one kernel vector per row, in reduced echelon form.
template <typename K>
Mat<K> kernelBasis(const Mat<K>& m) {
  Rref<K> r = rref(m);
  const Index cols = m.cols();
  std::vector<bool> isPivot(cols, false);
  for (Index p : r.pivots) isPivot[p] = true;
  Mat<K> basis(cols - r.rank(), cols);
  Index row = 0;
  for (Index f = 0; f < cols; ++f) {
    if (isPivot[f]) continue;
    for (Index j = 0; j < cols; ++j) basis(row, j) = K(0);
    basis(row, f) = K(1);
    for (Index i = 0; i < r.rank(); ++i) basis(row, r.pivots[i]) = -r.reduced(i, f);
    ++row;
  }
  // The free-variable basis is echelon up to row scaling/order; canonicalize.
  return rref(std::move(basis)).reduced;
}

/// Exact inverse by Gauss-Jordan on the augmented matrix.
template <typename K>
Mat<K> inverseOf(const Mat<K>& a) {
  if (a.rows() != a.cols()) throw Error("inverse of a non-square matrix");
  const Index n = a.rows();
  Mat<K> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Mat<K>::Identity(n, n);
  Rref<K> r = rref(std::move(aug));
  for (Index i = 0; i < n; ++i) {
    if (i >= static_cast<Index>(r.pivots.size()) || r.pivots[i] != i)
      throw Error("singular matrix");
  }
  return r.reduced.rightCols(n);
}

template <typename K>
bool isInvertible(const Mat<K>& a) {
  return a.rows() == a.cols() && rankOf(a) == a.rows();
}

/// Bareiss fraction-free elimination.
template <typename K>
K determinant(Mat<K> a) {
  if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
  const Index n = a.rows();
  if (n == 0) return K(1);
  K sign(1);
  K prevPivot(1);
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == K(0)) {
      Index sel = -1;
      for (Index i = k + 1; i < n; ++i) {
        if (a(i, k) != K(0)) { sel = i; break; }
      }
      if (sel < 0) return K(0);
      a.row(sel).swap(a.row(k));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prevPivot;
      }
      a(i, k) = K(0);
    }
    prevPivot = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Solves a x = b exactly; b may have several columns.
template <typename K>
Mat<K> solveExact(const Mat<K>& a, const Mat<K>& b) {
  return inverseOf(a) * b;
}

}  // namespace cosets
