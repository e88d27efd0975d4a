#pragma once

// Finite shadow of the representation machinery: tensor powers of the
// natural action at truncation n, exact fixed subspaces of the tail
// orthogonal group, Gram projectors, and the compressed operators between
// fixed subspaces.
//
// Two fixed-subspace notions coexist.  fixedSubspace(rep, alpha) is the full
// space of tail-invariant vectors at truncation n; it contains trace-type
// vectors that exist only at finite n.  stableFixedData(rep, alpha) keeps the
// span of the basis tensors supported on the first alpha coordinates — the
// part that survives every enlargement of n.  The multiplicativity identity
// for compressed operators holds exactly on the stable spaces; on the full
// spaces the trace components acquire corrections that vanish only as n
// grows, so the stable spaces are what the product check uses.

#include <string>
#include <utility>
#include <vector>

#include "cosets/coset.hpp"
#include "cosets/subspace.hpp"

namespace cosets {

struct TensorPowerRep {
  Index n = 1;  // truncation dimension
  Index d = 1;  // tensor degree

  Index dim() const {
    Index r = 1;
    for (Index k = 0; k < d; ++k) r *= n;
    return r;
  }
};

/// d-th Kronecker power of the padded core.
inline MatQ rhoOf(const FiniteSupportOperator<Rational>& g, const TensorPowerRep& rep) {
  if (g.support() > rep.n) throw Error("operator support exceeds the truncation");
  MatQ base = g.coreAt(rep.n);
  MatQ r = MatQ::Identity(1, 1);
  for (Index k = 0; k < rep.d; ++k) r = kroneckerOf(r, base);
  return r;
}

inline MatQ rhoOfMatrix(const MatQ& core, const TensorPowerRep& rep) {
  if (core.rows() > rep.n) throw Error("matrix size exceeds the truncation");
  MatQ base = padIdentity(core, rep.n);
  MatQ r = MatQ::Identity(1, 1);
  for (Index k = 0; k < rep.d; ++k) r = kroneckerOf(r, base);
  return r;
}

/// Lie-algebra element acting as a derivation: sum over tensor positions.
inline MatQ derivationAction(const MatQ& x, const TensorPowerRep& rep) {
  if (x.rows() != rep.n || x.cols() != rep.n) throw Error("generator size mismatch");
  MatQ total = MatQ::Zero(rep.dim(), rep.dim());
  for (Index p = 0; p < rep.d; ++p) {
    MatQ term = MatQ::Identity(1, 1);
    for (Index k = 0; k < rep.d; ++k)
      term = kroneckerOf(term, k == p ? x : MatQ(MatQ::Identity(rep.n, rep.n)));
    total += term;
  }
  return total;
}

struct FixedData {
  TensorPowerRep rep;
  Index alpha = 0;
  Subspace<Rational> space;
  MatQ projector;
};

/// Exact orthogonal projector onto the row space of `basis` via the Gram
/// matrix; stays inside Q.
inline MatQ gramProjector(const Mat<Rational>& basis, Index ambient) {
  if (basis.rows() == 0) return MatQ::Zero(ambient, ambient);
  MatQ gram = basis * basis.transpose();
  return basis.transpose() * inverseOf(gram) * basis;
}

/// Vectors fixed by every tail rotation (generators past alpha) and the tail
/// reflection; computed as an iterated exact kernel.
inline FixedData fixedSubspace(const TensorPowerRep& rep, Index alpha) {
  if (alpha < 0 || alpha > rep.n) throw Error("alpha out of range");
  MatQ basis = MatQ::Identity(rep.dim(), rep.dim());
  auto intersectWithKernel = [&](const MatQ& action) {
    if (basis.rows() == 0) return;
    MatQ m = action * basis.transpose();  // columns = action on basis vectors
    MatQ coeff = kernelBasis(m);          // rows: coefficient-space kernel
    basis = coeff * basis;
  };
  for (Index i = alpha; i < rep.n; ++i) {
    for (Index j = i + 1; j < rep.n; ++j) {
      MatQ x = MatQ::Zero(rep.n, rep.n);
      x(i, j) = Rational(1);
      x(j, i) = Rational(-1);
      intersectWithKernel(derivationAction(x, rep));
    }
  }
  if (rep.n - alpha >= 1) {
    MatQ refl = MatQ::Identity(rep.n, rep.n);
    refl(rep.n - 1, rep.n - 1) = Rational(-1);
    MatQ action = rhoOfMatrix(refl, rep) - MatQ::Identity(rep.dim(), rep.dim());
    intersectWithKernel(action);
  }
  FixedData fd;
  fd.rep = rep;
  fd.alpha = alpha;
  fd.space = Subspace<Rational>::fromSpanningRows(basis);
  fd.projector = gramProjector(fd.space.basis(), rep.dim());
  return fd;
}

/// The truncation-stable part: basis tensors supported on the first alpha
/// coordinates.
inline FixedData stableFixedData(const TensorPowerRep& rep, Index alpha) {
  if (alpha < 0 || alpha > rep.n) throw Error("alpha out of range");
  Index count = 1;
  for (Index k = 0; k < rep.d; ++k) count *= alpha;
  MatQ basis = MatQ::Zero(count, rep.dim());
  std::vector<Index> tuple(rep.d, 0);
  for (Index row = 0; row < count; ++row) {
    Index enc = 0;
    for (Index k = 0; k < rep.d; ++k) enc = enc * rep.n + tuple[k];
    basis(row, enc) = Rational(1);
    for (Index k = rep.d; k-- > 0;) {
      if (++tuple[k] < alpha) break;
      tuple[k] = 0;
    }
  }
  FixedData fd;
  fd.rep = rep;
  fd.alpha = alpha;
  fd.space = Subspace<Rational>::fromSpanningRows(basis);
  fd.projector = gramProjector(fd.space.basis(), rep.dim());
  return fd;
}

/// Matrix of project-then-act between fixed subspaces, in canonical bases.
inline MatQ rhoBarMatrix(const MatQ& rho, const FixedData& source, const FixedData& target) {
  MatQ moved = target.projector * rho * source.space.basis().transpose();
  MatQ out(target.space.dim(), source.space.dim());
  for (Index c = 0; c < moved.cols(); ++c) {
    Vec<Rational> coords = target.space.coordinates(moved.col(c));
    out.col(c) = coords;
  }
  return out;
}

inline MatQ rhoBar(const FiniteSupportOperator<Rational>& g, const TensorPowerRep& rep,
                   const FixedData& source, const FixedData& target) {
  return rhoBarMatrix(rhoOf(g, rep), source, target);
}

struct RepcatReport {
  bool pass = false;
  Index n = 0, d = 0;
  Index alpha = 0, beta = 0, gamma = 0;
  Index minN = 0;
  std::string identity = "compressed product equals compressed stabilized composition";
};

/// Exact check of the compressed multiplicativity identity on the stable
/// fixed subspaces; the composed element is computed the long way, as
/// g Theta_m h with m = max of supports.
inline RepcatReport verifyRepcat(const MatQ& gCore, const MatQ& hCore, Index alpha, Index beta,
                                 Index gamma, const TensorPowerRep& rep) {
  RepcatReport rpt;
  rpt.n = rep.n;
  rpt.d = rep.d;
  rpt.alpha = alpha;
  rpt.beta = beta;
  rpt.gamma = gamma;
  const Index m = std::max<Index>({gCore.rows(), hCore.rows(), 1});
  const Index zSize = beta + 2 * m;
  rpt.minN = std::max({zSize, alpha, gamma});
  if (rep.n < rpt.minN) throw Error("truncation too small; need n >= " + std::to_string(rpt.minN));

  MatQ z = padIdentity(gCore, zSize) * padIdentity(thetaCore<Rational>(beta, m), zSize) *
           padIdentity(hCore, zSize);
  FixedData fa = stableFixedData(rep, alpha);
  FixedData fb = stableFixedData(rep, beta);
  FixedData fc = stableFixedData(rep, gamma);
  MatQ left = rhoBarMatrix(rhoOfMatrix(gCore, rep), fb, fc) *
              rhoBarMatrix(rhoOfMatrix(hCore, rep), fa, fb);
  MatQ right = rhoBarMatrix(rhoOfMatrix(z, rep), fa, fc);
  rpt.pass = exactEq(left, right);
  return rpt;
}

struct ThetaLimitReport {
  Index alpha = 0;
  Index stabilizedAt = -1;       // least m in range from which the compression is constant
  bool stableIsIdentity = false; // stable value acts as the identity on the fixed space
  std::vector<bool> equalsProjector;  // per m: compression equals the projector
};

/// Compressions of the block swaps between the fixed subspace and itself;
/// reports where they stabilize and whether the limit is the identity.
inline ThetaLimitReport thetaWeakLimitCheck(const TensorPowerRep& rep, Index alpha, Index mLo,
                                            Index mHi) {
  if (mLo < 1 || mLo > mHi) throw Error("bad m range");
  if (alpha + 2 * mHi > rep.n) throw Error("m range exceeds the truncation");
  FixedData fd = fixedSubspace(rep, alpha);
  ThetaLimitReport rpt;
  rpt.alpha = alpha;
  std::vector<MatQ> compressions;
  for (Index m = mLo; m <= mHi; ++m) {
    MatQ rho = rhoOfMatrix(padIdentity(thetaCore<Rational>(alpha, m), rep.n), rep);
    MatQ comp = fd.projector * rho * fd.projector;
    rpt.equalsProjector.push_back(exactEq(comp, fd.projector));
    compressions.push_back(std::move(comp));
  }
  for (std::size_t i = 0; i < compressions.size(); ++i) {
    bool constant = true;
    for (std::size_t k = i + 1; k < compressions.size(); ++k)
      constant = constant && exactEq(compressions[i], compressions[k]);
    if (constant) {
      rpt.stabilizedAt = mLo + static_cast<Index>(i);
      MatQ restricted = rhoBarMatrix(compressions[i], fd, fd);
      rpt.stableIsIdentity = isIdentity(restricted);
      break;
    }
  }
  return rpt;
}

}  // namespace cosets
