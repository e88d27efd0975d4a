#pragma once

// Characteristic function of a working matrix: for a square invertible
// matrix W with `bhat` exposed rows and `ahat` exposed columns and a point
// lambda of the projective line, the relation chi(lambda) collects all
// (p+, p-) + (q+, q-) for which the linear system
//
//   (p+, lambda*x) = W (q+, y)         (p-, x) = W^{t,-1} (q-, lambda*y)
//
// is solvable in the tail unknowns x, y.  The second pair of equations is
// assembled in the equivalent form W^t (p-, x) = (q-, lambda*y), which keeps
// every coefficient polynomial in (lambda0 : lambda1) and degenerates
// correctly at lambda = infinity.

#include <vector>

#include "cosets/echelon.hpp"
#include "cosets/relation.hpp"

namespace cosets {

/// chi as a relation from K^{2*ahat} to K^{2*bhat}; graph coordinates are
/// (p+, p-, q+, q-).
template <typename K>
LinearRelation<K> charFunctionFromWorking(const Mat<K>& w, Index bhat, Index ahat,
                                          const ProjectivePoint<K>& lambda) {
  if (w.rows() != w.cols()) throw Error("characteristic function needs a square matrix");
  const Index n = w.rows();
  if (bhat > n || ahat > n) throw Error("exposed block exceeds working size");
  if (!isInvertible(w)) throw Error("singular representative");
  const Index t = n - bhat;   // tail rows, unknown x
  const Index tp = n - ahat;  // tail cols, unknown y
  const K l0 = lambda.num, l1 = lambda.den;

  const Mat<K> a = w.topLeftCorner(bhat, ahat);
  const Mat<K> b = w.topRightCorner(bhat, tp);
  const Mat<K> c = w.bottomLeftCorner(t, ahat);
  const Mat<K> d = w.bottomRightCorner(t, tp);

  // Unknowns: (p+ [bhat], p- [bhat], q+ [ahat], q- [ahat], x [t], y [tp]).
  const Index cols = 2 * bhat + 2 * ahat + t + tp;
  const Index oPp = 0, oPm = bhat, oQp = 2 * bhat, oQm = 2 * bhat + ahat;
  const Index oX = 2 * bhat + 2 * ahat, oY = oX + t;
  Mat<K> sys = Mat<K>::Zero(bhat + t + ahat + tp, cols);
  Index r = 0;
  // p+ - A q+ - B y = 0
  for (Index i = 0; i < bhat; ++i, ++r) {
    sys(r, oPp + i) = K(1);
    for (Index j = 0; j < ahat; ++j) sys(r, oQp + j) = -a(i, j);
    for (Index j = 0; j < tp; ++j) sys(r, oY + j) = -b(i, j);
  }
  // l0 x - l1 (C q+ + D y) = 0
  for (Index i = 0; i < t; ++i, ++r) {
    sys(r, oX + i) = l0;
    for (Index j = 0; j < ahat; ++j) sys(r, oQp + j) = -(l1 * c(i, j));
    for (Index j = 0; j < tp; ++j) sys(r, oY + j) = -(l1 * d(i, j));
  }
  // q- - A^t p- - C^t x = 0
  for (Index i = 0; i < ahat; ++i, ++r) {
    sys(r, oQm + i) = K(1);
    for (Index j = 0; j < bhat; ++j) sys(r, oPm + j) = -a(j, i);
    for (Index j = 0; j < t; ++j) sys(r, oX + j) = -c(j, i);
  }
  // l0 y - l1 (B^t p- + D^t x) = 0
  for (Index i = 0; i < tp; ++i, ++r) {
    sys(r, oY + i) = l0;
    for (Index j = 0; j < bhat; ++j) sys(r, oPm + j) = -(l1 * b(j, i));
    for (Index j = 0; j < t; ++j) sys(r, oX + j) = -(l1 * d(j, i));
  }

  Subspace<K> sol = Subspace<K>::kernelOf(sys);
  std::vector<Index> keep;
  for (Index i = 0; i < 2 * bhat + 2 * ahat; ++i) keep.push_back(i);
  return LinearRelation<K>(2 * ahat, 2 * bhat, coordinateProject(sol, keep));
}

/// Fixed sample set for invariant collection: five moderate-height rational
/// points avoiding lambda^2 = 1, plus the point at infinity.
template <typename K>
std::vector<ProjectivePoint<K>> chiSamplePoints() {
  std::vector<ProjectivePoint<K>> pts;
  pts.push_back(ProjectivePoint<K>(K(2), K(1)));
  pts.push_back(ProjectivePoint<K>(K(3), K(1)));
  pts.push_back(ProjectivePoint<K>(K(5), K(2)));
  pts.push_back(ProjectivePoint<K>(K(7), K(3)));
  pts.push_back(ProjectivePoint<K>(K(-2), K(1)));
  pts.push_back(ProjectivePoint<K>::infinity());
  return pts;
}

/// Diagnostic: is the graph isotropic for the standard pairing matching p+
/// with p- and q+ with q-?  Reported, never asserted.
template <typename K>
bool chiIsotropicDiagnostic(const LinearRelation<K>& rel) {
  const Index bhat = rel.codDim() / 2, ahat = rel.domDim() / 2;
  const Mat<K>& basis = rel.graph().basis();
  auto form = [&](Index u, Index v) {
    K s(0);
    for (Index i = 0; i < bhat; ++i)
      s += basis(u, i) * basis(v, bhat + i) - basis(u, bhat + i) * basis(v, i);
    const Index q = 2 * bhat;
    for (Index i = 0; i < ahat; ++i)
      s -= basis(u, q + i) * basis(v, q + ahat + i) - basis(u, q + ahat + i) * basis(v, q + i);
    return s;
  };
  for (Index u = 0; u < basis.rows(); ++u)
    for (Index v = u; v < basis.rows(); ++v)
      if (form(u, v) != K(0)) return false;
  return true;
}

}  // namespace cosets
