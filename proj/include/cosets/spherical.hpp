#pragma once

// Closed-form spherical function evaluation for the real pair.  This is the
// only floating-point corner of the library: singular values come from a
// numeric SVD, determinants stay exact until the final conversion.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <vector>

#include "cosets/group.hpp"

namespace cosets {

struct SphericalParams {
  std::vector<double> s;
  double a = 0.0;
  int sigma = 0;
};

inline Eigen::MatrixXd toDoubleMatrix(const MatQ& m) {
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).toDouble();
  return r;
}

/// Phi(g) = |det g|^{ia} sgn(det g)^sigma prod_k prod_l
///          ((1+is_k)/2 l + (1-is_k)/2 l^{-1})^{-1/2}
/// over the singular values l of the core; identity-tail factors equal 1.
inline std::complex<double> sphericalPhi(const SphericalParams& params,
                                         const FiniteSupportOperator<Rational>& g) {
  if (params.sigma != 0 && params.sigma != 1) throw Error("sigma must be 0 or 1");
  Rational det = determinant(g.core());
  if (det.isZero()) throw Error("singular input");
  const double absDet = std::abs(det.toDouble());
  std::complex<double> phi = std::exp(std::complex<double>(0.0, params.a * std::log(absDet)));
  if (params.sigma == 1 && det.sign() < 0) phi = -phi;
  if (g.support() == 0) return phi;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(toDoubleMatrix(g.core()));
  const auto& sv = svd.singularValues();
  const double tol = 1e-12 * std::max(1.0, sv.size() > 0 ? sv(0) : 1.0);
  for (Eigen::Index l = 0; l < sv.size(); ++l) {
    if (!(sv(l) > tol)) throw Error("singular values below tolerance");
    const double lam = sv(l);
    for (double sk : params.s) {
      // (1+is)/2 l + (1-is)/2 / l; the real part is at least 1, so the
      // principal square root never meets the branch cut.
      std::complex<double> factor(0.5 * (lam + 1.0 / lam), 0.5 * sk * (lam - 1.0 / lam));
      phi /= std::sqrt(factor);
    }
  }
  return phi;
}

/// Coordinates on which the operator differs from the identity.
template <typename K>
std::vector<Index> nontrivialCoords(const FiniteSupportOperator<K>& g) {
  std::vector<Index> out;
  const Mat<K>& c = g.core();
  for (Index i = 0; i < c.rows(); ++i) {
    bool trivial = c(i, i) == K(1);
    for (Index j = 0; trivial && j < c.rows(); ++j) {
      if (j == i) continue;
      trivial = c(i, j) == K(0) && c(j, i) == K(0);
    }
    if (!trivial) out.push_back(i);
  }
  return out;
}

template <typename K>
bool disjointSupports(const FiniteSupportOperator<K>& g, const FiniteSupportOperator<K>& h) {
  auto a = nontrivialCoords(g);
  auto b = nontrivialCoords(h);
  for (Index i : a)
    for (Index j : b)
      if (i == j) return false;
  return true;
}

/// Multiplicativity of the spherical character on disjointly supported
/// elements: Phi(g + h) = Phi(g) Phi(h) within tolerance (the singular values
/// of the direct sum are the union, determinants multiply).
inline bool sphericalCharacterCheck(const SphericalParams& params,
                                    const FiniteSupportOperator<Rational>& g,
                                    const FiniteSupportOperator<Rational>& h,
                                    double tol = 1e-10) {
  if (!disjointSupports(g, h)) throw Error("elements must act on disjoint coordinate blocks");
  std::complex<double> joint = sphericalPhi(params, g * h);
  std::complex<double> split = sphericalPhi(params, g) * sphericalPhi(params, h);
  return std::abs(joint - split) < tol;
}

}  // namespace cosets
