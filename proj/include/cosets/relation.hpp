#pragma once

// Linear relations: subspaces of codomain + domain acting as multi-valued
// linear maps, composed by intersect-and-project.  Graph coordinates are
// ordered codomain-first.

#include <utility>
#include <vector>

#include "cosets/subspace.hpp"

namespace cosets {

/// Point of the projective line over K, written (num : den); den = 0 is the
/// point at infinity.
template <typename K>
struct ProjectivePoint {
  K num;
  K den;

  ProjectivePoint(K n, K d) : num(std::move(n)), den(std::move(d)) {
    if (num == K(0) && den == K(0)) throw Error("projective point (0:0)");
  }
  static ProjectivePoint finite(K value) { return {std::move(value), K(1)}; }
  static ProjectivePoint infinity() { return {K(1), K(0)}; }
  bool isInfinite() const { return den == K(0); }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.num * b.den == b.num * a.den;
  }
};

template <typename K>
class LinearRelation {
public:
  LinearRelation() : dom_(0), cod_(0) {}
  LinearRelation(Index domDim, Index codDim, Subspace<K> graph)
      : dom_(domDim), cod_(codDim), graph_(std::move(graph)) {
    if (graph_.ambientDim() != dom_ + cod_)
      throw Error("relation graph has wrong ambient dimension");
  }

  Index domDim() const { return dom_; }
  Index codDim() const { return cod_; }
  Index dim() const { return graph_.dim(); }
  const Subspace<K>& graph() const { return graph_; }

  static LinearRelation identity(Index n) {
    Mat<K> rows(n, 2 * n);
    rows.setZero();
    for (Index i = 0; i < n; ++i) {
      rows(i, i) = K(1);
      rows(i, n + i) = K(1);
    }
    return {n, n, Subspace<K>::fromSpanningRows(rows)};
  }

  /// Graph of a single-valued map x -> m x.
  static LinearRelation graphOfMatrix(const Mat<K>& m) {
    const Index cod = m.rows(), dom = m.cols();
    Mat<K> rows(dom, cod + dom);
    rows.setZero();
    for (Index j = 0; j < dom; ++j) {
      for (Index i = 0; i < cod; ++i) rows(j, i) = m(i, j);
      rows(j, cod + j) = K(1);
    }
    return {dom, cod, Subspace<K>::fromSpanningRows(rows)};
  }

  static LinearRelation fullRelation(Index dom, Index cod) {
    return {dom, cod, Subspace<K>::full(dom + cod)};
  }

  /// Everything maps to zero: graph = {(0, x)}.
  static LinearRelation zeroRelation(Index dom, Index cod) {
    Mat<K> rows(dom, cod + dom);
    rows.setZero();
    for (Index j = 0; j < dom; ++j) rows(j, cod + j) = K(1);
    return {dom, cod, Subspace<K>::fromSpanningRows(rows)};
  }

  friend bool operator==(const LinearRelation& a, const LinearRelation& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.graph_ == b.graph_;
  }
  friend bool operator!=(const LinearRelation& a, const LinearRelation& b) { return !(a == b); }

private:
  Index dom_;
  Index cod_;
  Subspace<K> graph_;
};

/// Pointwise composition s . r = {(z, x) : exists y with (y,x) in r, (z,y) in s},
/// computed by intersecting the lifted graphs in (c + b + a)-space and
/// projecting out the middle block.
template <typename K>
LinearRelation<K> relationCompose(const LinearRelation<K>& s, const LinearRelation<K>& r) {
  if (r.codDim() != s.domDim()) throw Error("relationCompose: dimension mismatch");
  const Index a = r.domDim(), b = r.codDim(), c = s.codDim();
  // Lift r to {(z, y, x) : (y, x) in r} and s to {(z, y, x) : (z, y) in s}.
  Mat<K> rAnn = annihilatorRows(r.graph());  // constraints on (y, x)
  Mat<K> rLift(rAnn.rows(), c + b + a);
  rLift.setZero();
  rLift.block(0, c, rAnn.rows(), b + a) = rAnn;
  Mat<K> sAnn = annihilatorRows(s.graph());  // constraints on (z, y)
  Mat<K> sLift(sAnn.rows(), c + b + a);
  sLift.setZero();
  sLift.block(0, 0, sAnn.rows(), c + b) = sAnn;
  Mat<K> stacked(rLift.rows() + sLift.rows(), c + b + a);
  stacked.topRows(rLift.rows()) = rLift;
  stacked.bottomRows(sLift.rows()) = sLift;
  Subspace<K> joint = Subspace<K>::kernelOf(stacked);
  std::vector<Index> keep;
  keep.reserve(c + a);
  for (Index i = 0; i < c; ++i) keep.push_back(i);
  for (Index i = 0; i < a; ++i) keep.push_back(c + b + i);
  return {a, c, coordinateProject(joint, keep)};
}

}  // namespace cosets
