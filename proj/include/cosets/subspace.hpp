#pragma once

// Subspaces of K^n in canonical form: the basis is the reduced row-echelon
// basis of the span, so two subspaces are equal as sets iff their stored
// bases are bit-identical.

#include <algorithm>
#include <vector>

#include "cosets/echelon.hpp"

namespace cosets {

template <typename K>
class Subspace {
public:
  Subspace() : ambient_(0) {}

  static Subspace fromSpanningRows(const Mat<K>& rows) {
    Subspace s;
    s.ambient_ = rows.cols();
    Rref<K> r = rref(rows);
    s.basis_ = std::move(r.reduced);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  static Subspace zero(Index ambient) { return fromSpanningRows(Mat<K>(0, ambient)); }

  static Subspace full(Index ambient) {
    return fromSpanningRows(Mat<K>(Mat<K>::Identity(ambient, ambient)));
  }

  static Subspace kernelOf(const Mat<K>& m) {
    Subspace s;
    s.ambient_ = m.cols();
    s.basis_ = kernelBasis(m);
    Rref<K> r = rref(s.basis_);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  Index ambientDim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  const Mat<K>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  bool contains(const Vec<K>& v) const {
    if (v.size() != ambient_) throw Error("ambient dimension mismatch");
    Vec<K> r = v;
    for (Index i = 0; i < basis_.rows(); ++i) {
      K c = r(pivots_[i]);
      if (c != K(0)) r -= c * basis_.row(i).transpose();
    }
    for (Index j = 0; j < ambient_; ++j)
      if (r(j) != K(0)) return false;
    return true;
  }

  /// Coordinates of a vector of the subspace in the canonical basis.
  Vec<K> coordinates(const Vec<K>& v) const {
    Vec<K> c(dim());
    for (Index i = 0; i < dim(); ++i) c(i) = v(pivots_[i]);
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_ || a.dim() != b.dim()) return false;
    return exactEq(a.basis_, b.basis_);
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
  Index ambient_;
  Mat<K> basis_;
  std::vector<Index> pivots_;
};

template <typename K>
bool subspaceEqual(const Subspace<K>& a, const Subspace<K>& b) {
  if (a.ambientDim() != b.ambientDim())
    throw Error("subspaceEqual: ambient dimension mismatch");
  return a == b;
}

/// Rows annihilating the subspace: s = ker(annihilator) and vice versa.
template <typename K>
Mat<K> annihilatorRows(const Subspace<K>& s) {
  return kernelBasis(s.basis());
}

template <typename K>
Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b) {
  if (a.ambientDim() != b.ambientDim()) throw Error("intersect: ambient dimension mismatch");
  Mat<K> na = annihilatorRows(a);
  Mat<K> nb = annihilatorRows(b);
  Mat<K> stacked(na.rows() + nb.rows(), a.ambientDim());
  stacked.topRows(na.rows()) = na;
  stacked.bottomRows(nb.rows()) = nb;
  return Subspace<K>::kernelOf(stacked);
}

/// Image of the subspace under deletion of all coordinates outside `coords`;
/// the retained coordinates keep their relative order.
template <typename K>
Subspace<K> coordinateProject(const Subspace<K>& s, std::vector<Index> coords) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  for (Index c : coords) {
    if (c < 0 || c >= s.ambientDim()) throw Error("coordinateProject: index out of range");
  }
  Mat<K> rows(s.dim(), static_cast<Index>(coords.size()));
  for (Index i = 0; i < s.dim(); ++i)
    for (Index j = 0; j < static_cast<Index>(coords.size()); ++j)
      rows(i, j) = s.basis()(i, coords[j]);
  return Subspace<K>::fromSpanningRows(rows);
}

}  // namespace cosets
