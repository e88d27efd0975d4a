#pragma once

// Elements of the infinite-dimensional classical groups: a finite square
// core plus an implicit identity tail.  Cores are kept in normal form
// (trailing identity rows/columns stripped), so the stored size is the
// support of the operator.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cosets/echelon.hpp"
#include "cosets/prng.hpp"

namespace cosets {

enum class GroupKind { GlReal, GlComplex, Orthogonal, Unitary, Product };

struct GroupDescriptor {
  GroupKind kind = GroupKind::GlReal;
  std::vector<GroupDescriptor> factors;  // Product only

  static GroupDescriptor simple(GroupKind k) {
    if (k == GroupKind::Product) throw Error("product descriptor needs factors");
    return {k, {}};
  }
  static GroupDescriptor product(std::vector<GroupDescriptor> fs) {
    if (fs.size() < 2) throw Error("product descriptor needs at least 2 factors");
    for (const auto& f : fs)
      if (f.kind == GroupKind::Product) throw Error("nested product descriptors are not supported");
    return {GroupKind::Product, std::move(fs)};
  }

  bool isProduct() const { return kind == GroupKind::Product; }
  std::size_t arity() const { return isProduct() ? factors.size() : 1; }
  const GroupDescriptor& factor(std::size_t i) const {
    if (!isProduct()) {
      if (i != 0) throw Error("factor index out of range");
      return *this;
    }
    return factors.at(i);
  }

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
    return a.kind == b.kind && a.factors == b.factors;
  }
};

inline std::string groupKindName(GroupKind k) {
  switch (k) {
    case GroupKind::GlReal: return "GL_R";
    case GroupKind::GlComplex: return "GL_C";
    case GroupKind::Orthogonal: return "O";
    case GroupKind::Unitary: return "U";
    case GroupKind::Product: return "PRODUCT";
  }
  throw Error("bad group kind");
}

inline GroupKind groupKindFromName(const std::string& s) {
  if (s == "GL_R") return GroupKind::GlReal;
  if (s == "GL_C") return GroupKind::GlComplex;
  if (s == "O") return GroupKind::Orthogonal;
  if (s == "U") return GroupKind::Unitary;
  if (s == "PRODUCT") return GroupKind::Product;
  throw Error("unknown group kind: " + s);
}

inline Field fieldOfKind(GroupKind k) {
  switch (k) {
    case GroupKind::GlReal:
    case GroupKind::Orthogonal: return Field::Q;
    case GroupKind::GlComplex:
    case GroupKind::Unitary: return Field::Qi;
    case GroupKind::Product: throw Error("product descriptor has no single field");
  }
  throw Error("bad group kind");
}

/// Heavy groups are the compact-type ones.
inline bool isHeavyKind(GroupKind k) {
  return k == GroupKind::Orthogonal || k == GroupKind::Unitary;
}

/// Maximal heavy subgroup of an irreducible classical group.
inline GroupKind maximalHeavyOf(GroupKind k) {
  switch (k) {
    case GroupKind::GlReal: return GroupKind::Orthogonal;
    case GroupKind::GlComplex: return GroupKind::Unitary;
    case GroupKind::Orthogonal: return GroupKind::Orthogonal;
    case GroupKind::Unitary: return GroupKind::Unitary;
    case GroupKind::Product: throw Error("maximalHeavyOf expects an irreducible kind");
  }
  throw Error("bad group kind");
}

/// Membership predicate on a raw core, before an operator is constructed.
template <typename K>
bool coreSatisfies(const Mat<K>& core, GroupKind kind) {
  if (core.rows() != core.cols()) return false;
  switch (kind) {
    case GroupKind::GlReal:
    case GroupKind::GlComplex:
      return isInvertible(core);
    case GroupKind::Orthogonal:
      return isIdentity(Mat<K>(core.transpose() * core));
    case GroupKind::Unitary:
      return isIdentity(Mat<K>(adjointOf(core) * core));
    case GroupKind::Product:
      throw Error("membership is per irreducible factor");
  }
  return false;
}

template <typename K>
class FiniteSupportOperator {
public:
  FiniteSupportOperator() : kind_(GroupKind::GlReal), core_(0, 0) {}

  FiniteSupportOperator(GroupKind kind, Mat<K> core) : kind_(kind), core_(std::move(core)) {
    if (kind_ == GroupKind::Product) throw Error("operator kind must be irreducible");
    strip();
    if (!coreSatisfies(core_, kind_))
      throw Error("core fails the " + groupKindName(kind_) + " membership identity");
  }

  static FiniteSupportOperator identity(GroupKind kind) {
    return FiniteSupportOperator(kind, Mat<K>(0, 0));
  }

  GroupKind kind() const { return kind_; }
  Index support() const { return core_.rows(); }
  const Mat<K>& core() const { return core_; }
  Mat<K> coreAt(Index n) const { return padIdentity(core_, n); }
  bool isIdentityOp() const { return support() == 0; }

  FiniteSupportOperator inverse() const {
    return FiniteSupportOperator(kind_, inverseOf(core_));
  }

  friend FiniteSupportOperator operator*(const FiniteSupportOperator& a,
                                         const FiniteSupportOperator& b) {
    if (a.kind_ != b.kind_) throw Error("operator product across different groups");
    Index n = std::max(a.support(), b.support());
    return FiniteSupportOperator(a.kind_, Mat<K>(a.coreAt(n) * b.coreAt(n)));
  }

  friend bool operator==(const FiniteSupportOperator& a, const FiniteSupportOperator& b) {
    return a.kind_ == b.kind_ && exactEq(a.core_, b.core_);
  }

private:
  void strip() {
    Index n = core_.rows();
    while (n > 0) {
      bool id = core_(n - 1, n - 1) == K(1);
      for (Index i = 0; id && i < n - 1; ++i)
        id = core_(i, n - 1) == K(0) && core_(n - 1, i) == K(0);
      if (!id) break;
      --n;
    }
    core_.conservativeResize(n, n);
  }

  GroupKind kind_;
  Mat<K> core_;
};

template <typename K>
bool isMember(const FiniteSupportOperator<K>& op) {
  return coreSatisfies(op.core(), op.kind());
}

/// Block permutation fixing the first `alpha` coordinates and swapping the
/// next two m-blocks; an involution, orthogonal over any of our fields.
template <typename K>
Mat<K> thetaCore(Index alpha, Index m) {
  if (alpha < 0 || m < 1) throw Error("theta needs alpha >= 0 and m >= 1");
  Index n = alpha + 2 * m;
  Mat<K> core = Mat<K>::Zero(n, n);
  for (Index i = 0; i < alpha; ++i) core(i, i) = K(1);
  for (Index i = 0; i < m; ++i) {
    core(alpha + i, alpha + m + i) = K(1);
    core(alpha + m + i, alpha + i) = K(1);
  }
  return core;
}

template <typename K>
FiniteSupportOperator<K> theta(Index alpha, Index m) {
  GroupKind kind = FieldTraits<K>::tag == Field::Q ? GroupKind::Orthogonal : GroupKind::Unitary;
  return FiniteSupportOperator<K>(kind, thetaCore<K>(alpha, m));
}

namespace detail {

template <typename K>
Mat<K> skewSample(Index n, SplitMix64& rng) {
  Mat<K> s = Mat<K>::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      K v = smallScalar<K>(rng);
      s(i, j) = v;
      s(j, i) = -scalarConj(v);
    }
  }
  if constexpr (FieldTraits<K>::tag == Field::Qi) {
    // Skew-Hermitian diagonal: purely imaginary entries.
    for (Index i = 0; i < n; ++i) s(i, i) = K(Rational(0), smallRational(rng));
  }
  return s;
}

}  // namespace detail

/// Cayley transform (1 - S)(1 + S)^-1 of a random skew matrix: an exactly
/// orthogonal (Q) or unitary (Qi) operator of support <= n.  Seeds yielding a
/// singular 1 + S are resampled with an incremented nonce.
template <typename K>
FiniteSupportOperator<K> cayleySample(Index n, std::uint64_t seed) {
  if (n < 1) throw Error("cayleySample needs n >= 1");
  for (std::uint64_t nonce = 0;; ++nonce) {
    SplitMix64 rng(deriveSeed(seed, nonce));
    Mat<K> s = detail::skewSample<K>(n, rng);
    Mat<K> onePlus = Mat<K>::Identity(n, n) + s;
    if (!isInvertible(onePlus)) continue;
    Mat<K> core = (Mat<K>::Identity(n, n) - s) * inverseOf(onePlus);
    GroupKind kind = FieldTraits<K>::tag == Field::Q ? GroupKind::Orthogonal : GroupKind::Unitary;
    return FiniteSupportOperator<K>(kind, std::move(core));
  }
}

/// Random invertible small-entry core, for sampling GL-type representatives.
template <typename K>
Mat<K> invertibleSample(Index n, std::uint64_t seed, long maxNum = 2, long maxDen = 3) {
  for (std::uint64_t nonce = 0;; ++nonce) {
    SplitMix64 rng(deriveSeed(seed, nonce));
    Mat<K> m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        if constexpr (FieldTraits<K>::tag == Field::Q) {
          m(i, j) = Rational(rng.rangeInclusive(-maxNum, maxNum), rng.rangeInclusive(1, maxDen));
        } else {
          m(i, j) = GaussRational(
              Rational(rng.rangeInclusive(-maxNum, maxNum), rng.rangeInclusive(1, maxDen)),
              Rational(rng.rangeInclusive(-maxNum, maxNum), rng.rangeInclusive(1, maxDen)));
        }
      }
    if (isInvertible(m)) return m;
  }
}

/// An element of a (possibly product) group: one operator per factor.
template <typename K>
using GroupElement = std::vector<FiniteSupportOperator<K>>;

template <typename K>
GroupElement<K> identityElement(const GroupDescriptor& g) {
  GroupElement<K> e;
  for (std::size_t i = 0; i < g.arity(); ++i)
    e.push_back(FiniteSupportOperator<K>::identity(g.factor(i).kind));
  return e;
}

template <typename K>
GroupElement<K> elementProduct(const GroupElement<K>& a, const GroupElement<K>& b) {
  if (a.size() != b.size()) throw Error("element product across different arities");
  GroupElement<K> r;
  r.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] * b[i]);
  return r;
}

}  // namespace cosets
