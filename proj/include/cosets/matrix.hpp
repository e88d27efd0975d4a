#pragma once

// Dense exact matrices: Eigen dynamic matrices over Q or Q(i).
// Only ring operations of Eigen are used on these scalars (sums, products,
// blocks, transposes); decompositions for exact types live in echelon.hpp.

#include <Eigen/Core>

#include <initializer_list>
#include <vector>

#include "cosets/scalars.hpp"

namespace Eigen {

template <>
struct NumTraits<cosets::Rational> : GenericNumTraits<cosets::Rational> {
  typedef cosets::Rational Real;
  typedef cosets::Rational NonInteger;
  typedef cosets::Rational Nested;
  typedef cosets::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

// Q(i) is declared non-complex to Eigen on purpose: transposes must not
// conjugate implicitly, adjoints are spelled out where the algebra needs them.
template <>
struct NumTraits<cosets::GaussRational> : GenericNumTraits<cosets::GaussRational> {
  typedef cosets::GaussRational Real;
  typedef cosets::GaussRational NonInteger;
  typedef cosets::GaussRational Nested;
  typedef cosets::GaussRational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 120,
    MulCost = 240,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace cosets {

using Index = Eigen::Index;

template <typename K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;

template <typename K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

using MatQ = Mat<Rational>;
using MatQi = Mat<GaussRational>;

template <typename K>
Mat<K> matFromRows(std::initializer_list<std::initializer_list<long>> rows) {
  Index r = static_cast<Index>(rows.size());
  Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Mat<K> m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long v : row) m(i, j++) = K(v);
    ++i;
  }
  return m;
}

template <typename K>
bool exactEq(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename K>
bool isIdentity(const Mat<K>& a) {
  if (a.rows() != a.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != (i == j ? K(1) : K(0))) return false;
  return true;
}

template <typename K>
bool isZero(const Mat<K>& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != K(0)) return false;
  return true;
}

template <typename K>
Mat<K> conjugateOf(const Mat<K>& a) {
  Mat<K> r(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) r(i, j) = scalarConj(a(i, j));
  return r;
}

template <typename K>
Mat<K> adjointOf(const Mat<K>& a) {
  return conjugateOf<K>(Mat<K>(a.transpose()));
}

/// Pads a square matrix with an identity tail up to size n.
template <typename K>
Mat<K> padIdentity(const Mat<K>& a, Index n) {
  if (a.rows() != a.cols()) throw Error("padIdentity needs a square matrix");
  if (n < a.rows()) throw Error("padIdentity target smaller than input");
  Mat<K> r = Mat<K>::Identity(n, n);
  r.topLeftCorner(a.rows(), a.cols()) = a;
  return r;
}

/// Submatrix picked by explicit row and column index lists.
template <typename K>
Mat<K> submatrix(const Mat<K>& a, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  Mat<K> r(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (Index i = 0; i < r.rows(); ++i)
    for (Index j = 0; j < r.cols(); ++j) r(i, j) = a(rows[i], cols[j]);
  return r;
}

template <typename K>
Mat<K> kroneckerOf(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

}  // namespace cosets
