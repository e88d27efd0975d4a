#pragma once

// The mantle: double cosets for the half-infinite split of the coordinates
// into even (exposed) and odd (quotiented) positions.  The product is the
// same block formula with the even part playing the role of the heads; the
// group itself embeds on the even coordinates.

#include <utility>
#include <vector>

#include "cosets/charfn.hpp"
#include "cosets/group.hpp"
#include "cosets/witness.hpp"

namespace cosets {

template <typename K>
class MantleElement {
public:
  explicit MantleElement(Mat<K> m, bool normalize = true) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols()) throw Error("mantle element needs a square matrix");
    if (mat_.rows() % 2 != 0) throw Error("mantle working size must be even");
    if (!isInvertible(mat_)) throw Error("mantle element must be invertible");
    if (normalize) strip();
  }

  /// Places a group element on the even coordinates.
  static MantleElement fromGroup(const FiniteSupportOperator<K>& g) {
    Index s = g.support();
    Mat<K> m = Mat<K>::Identity(2 * s, 2 * s);
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j) m(2 * i, 2 * j) = g.core()(i, j);
    return MantleElement(std::move(m), /*normalize=*/false);
  }

  const Mat<K>& mat() const { return mat_; }
  Index size() const { return mat_.rows(); }

  std::vector<Index> evens() const {
    std::vector<Index> v;
    for (Index i = 0; i < size(); i += 2) v.push_back(i);
    return v;
  }
  std::vector<Index> odds() const {
    std::vector<Index> v;
    for (Index i = 1; i < size(); i += 2) v.push_back(i);
    return v;
  }

  MantleElement paddedTo(Index n) const {
    if (n < size() || n % 2 != 0) throw Error("bad mantle padding size");
    return MantleElement(padIdentity(mat_, n), /*normalize=*/false);
  }

private:
  void strip() {
    Index n = size();
    auto identityAt = [&](Index c) {
      if (mat_(c, c) != K(1)) return false;
      for (Index i = 0; i < mat_.rows(); ++i) {
        if (i == c) continue;
        if (mat_(i, c) != K(0) || mat_(c, i) != K(0)) return false;
      }
      return true;
    };
    while (n >= 2 && identityAt(n - 1) && identityAt(n - 2)) n -= 2;
    mat_.conservativeResize(n, n);
  }

  Mat<K> mat_;
};

/// The mantle product: the block formula with exposed = even coordinates;
/// the result is re-packed so that the exposed part sits on the evens again
/// (tail repacking is a two-sided move by the quotienting subgroup).
template <typename K>
MantleElement<K> mantleCompose(const MantleElement<K>& a, const MantleElement<K>& b) {
  Index n = std::max(a.size(), b.size());
  Mat<K> wa = padIdentity(a.mat(), n);
  Mat<K> wb = padIdentity(b.mat(), n);
  const Index e = n / 2;  // exposed count
  const Index t = n / 2;  // tail count per argument
  // Canonical order: exposed, a-tails, b-tails.
  const Index total = e + 2 * t;
  Mat<K> core(total, total);
  auto rowCoord = [&](Index i, bool& fromA, Index& coord) {
    if (i < e) { fromA = true; coord = 2 * i; return; }
    if (i < e + t) { fromA = true; coord = 2 * (i - e) + 1; return; }
    fromA = false;
    coord = 2 * (i - e - t) + 1;
  };
  auto colCoord = [&](Index j, bool& fromB, Index& coord) {
    if (j < e) { fromB = true; coord = 2 * j; return; }
    if (j < e + t) { fromB = false; coord = 2 * (j - e) + 1; return; }
    fromB = true;
    coord = 2 * (j - e - t) + 1;
  };
  for (Index i = 0; i < total; ++i) {
    bool rFromA;
    Index rc;
    rowCoord(i, rFromA, rc);
    for (Index j = 0; j < total; ++j) {
      bool cFromB;
      Index cc;
      colCoord(j, cFromB, cc);
      if (!cFromB) {                       // a's tail column
        core(i, j) = rFromA ? wa(rc, cc) : K(0);
      } else if (!rFromA) {                // b's tail row
        core(i, j) = wb(rc, cc);
      } else {
        K acc(0);
        for (Index k = 0; k < e; ++k) acc += wa(rc, 2 * k) * wb(2 * k, cc);
        core(i, j) = acc;
      }
    }
  }
  // Interleave: exposed k -> 2k, tails in order -> odd slots.
  const Index outSize = 2 * std::max(e, 2 * t);
  std::vector<Index> pos(total);
  for (Index i = 0; i < e; ++i) pos[i] = 2 * i;
  for (Index i = 0; i < 2 * t; ++i) pos[e + i] = 2 * i + 1;
  Mat<K> out = Mat<K>::Identity(outSize, outSize);
  for (Index i = 0; i < total; ++i)
    for (Index j = 0; j < total; ++j) out(pos[i], pos[j]) = core(i, j);
  return MantleElement<K>(std::move(out));
}

template <typename K>
struct MantleInvariants {
  Mat<K> corner;
  std::vector<LinearRelation<K>> chi;

  friend bool operator==(const MantleInvariants& a, const MantleInvariants& b) {
    return exactEq(a.corner, b.corner) && a.chi == b.chi;
  }
  friend bool operator!=(const MantleInvariants& a, const MantleInvariants& b) {
    return !(a == b);
  }
};

template <typename K>
MantleInvariants<K> mantleInvariants(const MantleElement<K>& a) {
  MantleInvariants<K> inv;
  auto ev = a.evens();
  auto od = a.odds();
  inv.corner = submatrix(a.mat(), ev, ev);
  std::vector<Index> order = ev;
  order.insert(order.end(), od.begin(), od.end());
  Mat<K> m = submatrix(a.mat(), order, order);
  for (const auto& pt : chiSamplePoints<K>())
    inv.chi.push_back(charFunctionFromWorking(m, static_cast<Index>(ev.size()),
                                              static_cast<Index>(ev.size()), pt));
  return inv;
}

enum class MantleVerdict { Distinct, EqualByInvariants, EqualByWitness };

template <typename K>
MantleVerdict mantleEq(const MantleElement<K>& a, const MantleElement<K>& b,
                       std::uint64_t nodeCap = 200000) {
  Index n = std::max(a.size(), b.size());
  MantleElement<K> ap = a.paddedTo(n), bp = b.paddedTo(n);
  if (mantleInvariants(ap) != mantleInvariants(bp)) return MantleVerdict::Distinct;
  WitnessProblem<K> p;
  p.numHeavyFactors = 1;
  p.leftLen = {n / 2};
  p.rightLen = {n / 2};
  p.a = {ap.mat()};
  p.b = {bp.mat()};
  std::vector<CoordLink> links(n);
  for (Index i = 0; i < n; ++i)
    links[i] = (i % 2 == 1) ? CoordLink{0, (i - 1) / 2} : CoordLink{};
  p.rowLink = {links};
  p.colLink = {links};
  if (solveWitness(p, nodeCap)) return MantleVerdict::EqualByWitness;
  return MantleVerdict::EqualByInvariants;
}

}  // namespace cosets
