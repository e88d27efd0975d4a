#pragma once

// Equality testing, explicit witnesses and the remaining morphism-level
// operations: the stabilized product computed literally through the block
// swap element, centrality and commutativity witnesses, and the projection
// between endomorphism semigroups.

#include <optional>
#include <utility>
#include <vector>

#include "cosets/coset.hpp"
#include "cosets/witness.hpp"

namespace cosets {

enum class CosetVerdict { Distinct, EqualByInvariants, EqualByWitness };

inline std::string verdictName(CosetVerdict v) {
  switch (v) {
    case CosetVerdict::Distinct: return "distinct";
    case CosetVerdict::EqualByInvariants: return "equal_by_invariants";
    case CosetVerdict::EqualByWitness: return "equal_by_witness";
  }
  throw Error("bad verdict");
}

struct CosetEqResult {
  CosetVerdict verdict;
  std::optional<TwoSidedWitness> witness;
};

template <typename K>
WitnessProblem<K> witnessProblemFor(const DoubleCoset<K>& a, const DoubleCoset<K>& b) {
  WitnessProblem<K> p;
  p.numHeavyFactors = static_cast<int>(a.pair()->L.arity());
  std::vector<Index> commonLen = a.slotLensByHeavyFactor();
  for (int j = 0; j < p.numHeavyFactors; ++j) {
    p.leftLen.push_back(commonLen[j] - a.beta()[j]);
    p.rightLen.push_back(commonLen[j] - a.alpha()[j]);
  }
  for (std::size_t t = 0; t < a.numFactors(); ++t) {
    p.a.push_back(a.factor(t).mat);
    p.b.push_back(b.factor(t).mat);
    std::vector<CoordLink> rl, cl;
    const auto& slots = a.pair()->embedding.slots[t];
    for (std::size_t s = 0; s < slots.size(); ++s) {
      Index len = a.factor(t).segLens[s];
      for (Index i = 0; i < len; ++i) {
        CoordLink r, c;
        if (!slots[s].identityBlock) {
          int j = static_cast<int>(slots[s].sourceFactor);
          if (i >= a.beta()[j]) r = {j, i - a.beta()[j]};
          if (i >= a.alpha()[j]) c = {j, i - a.alpha()[j]};
        }
        rl.push_back(r);
        cl.push_back(c);
      }
    }
    p.rowLink.push_back(std::move(rl));
    p.colLink.push_back(std::move(cl));
  }
  return p;
}

/// Three-tier equality: invariants refute, a bounded witness search confirms,
/// and matching invariants without a witness stay conjectural.
template <typename K>
CosetEqResult cosetEq(const DoubleCoset<K>& a, const DoubleCoset<K>& b,
                      std::uint64_t nodeCap = 200000) {
  if (!(*a.pair() == *b.pair())) throw Error("cosetEq: pair mismatch");
  if (a.alpha() != b.alpha() || a.beta() != b.beta()) throw Error("cosetEq: index mismatch");
  auto [ap, bp] = padToCommon(a, b);
  if (cosetInvariants(ap) != cosetInvariants(bp)) return {CosetVerdict::Distinct, std::nullopt};
  WitnessProblem<K> p = witnessProblemFor(ap, bp);
  if (auto w = solveWitness(p, nodeCap)) return {CosetVerdict::EqualByWitness, std::move(w)};
  return {CosetVerdict::EqualByInvariants, std::nullopt};
}

/// Literal single-slot block formula; the independent construction used to
/// cross-check the composition engine.
template <typename K>
Mat<K> blockFormulaProduct(const Mat<K>& g, Index gamma, Index beta, const Mat<K>& h,
                           Index alpha) {
  const Index tg = g.rows() - beta;   // g's tail column count
  const Index th = h.cols() - alpha;  // h's tail column count
  const Mat<K> a = g.topLeftCorner(gamma, beta);
  const Mat<K> b = g.topRightCorner(gamma, tg);
  const Mat<K> c = g.bottomLeftCorner(g.rows() - gamma, beta);
  const Mat<K> d = g.bottomRightCorner(g.rows() - gamma, tg);
  const Mat<K> pp = h.topLeftCorner(beta, alpha);
  const Mat<K> q = h.topRightCorner(beta, h.cols() - beta);
  const Mat<K> r = h.bottomLeftCorner(h.rows() - beta, alpha);
  const Mat<K> tt = h.bottomRightCorner(h.rows() - beta, h.cols() - beta);
  const Index n = g.rows() + h.rows() - beta;
  Mat<K> res = Mat<K>::Zero(n, n);
  res.block(0, 0, gamma, alpha) = a * pp;
  res.block(0, alpha, gamma, tg) = b;
  res.block(0, alpha + tg, gamma, th) = a * q;
  res.block(gamma, 0, g.rows() - gamma, alpha) = c * pp;
  res.block(gamma, alpha, g.rows() - gamma, tg) = d;
  res.block(gamma, alpha + tg, g.rows() - gamma, th) = c * q;
  res.block(g.rows(), 0, h.rows() - beta, alpha) = r;
  res.block(g.rows(), alpha + tg, h.rows() - beta, th) = tt;
  return res;
}

/// The product computed the long way: g Theta_m h at full working size,
/// together with the explicit tail permutations that carry it onto the block
/// formula layout.  Defined for single-factor single-slot pairs at matching
/// levels; the permutations fix the first `level` coordinates, so they are
/// legitimate heavy elements on both sides.
template <typename K>
struct ThetaRouteResult {
  Mat<K> z;
  std::vector<Index> rowOf;  // block-layout row -> z row
  std::vector<Index> colOf;
  Index m = 0;
};

template <typename K>
ThetaRouteResult<K> thetaRouteCompose(const DoubleCoset<K>& g, const DoubleCoset<K>& h) {
  if (g.numFactors() != 1 || g.pair()->embedding.slots[0].size() != 1)
    throw Error("thetaRouteCompose expects a single-factor, single-slot pair");
  if (g.alpha() != h.beta()) throw Error("middle index mismatch");
  const Index a = g.alpha()[0];
  if (g.beta()[0] != a || h.alpha()[0] != a)
    throw Error("thetaRouteCompose expects matching levels");
  const Index lg = g.factor(0).segLens[0];
  const Index lh = h.factor(0).segLens[0];
  const Index tg = lg - a, th = lh - a;
  const Index m = std::max<Index>(std::max(lg, lh), 1);  // max of supports
  const Index big = a + 2 * m;

  ThetaRouteResult<K> out;
  out.m = m;
  out.z = padIdentity(g.factor(0).mat, big) * padIdentity(thetaCore<K>(a, m), big) *
          padIdentity(h.factor(0).mat, big);
  auto& rowOf = out.rowOf;
  auto& colOf = out.colOf;
  rowOf.resize(big);
  colOf.resize(big);
  for (Index i = 0; i < a; ++i) {
    rowOf[i] = i;
    colOf[i] = i;
  }
  for (Index i = 0; i < tg; ++i) {
    rowOf[a + i] = a + i;
    colOf[a + i] = a + m + i;
  }
  for (Index i = 0; i < th; ++i) {
    rowOf[a + tg + i] = a + m + i;
    colOf[a + tg + i] = a + i;
  }
  Index pos = a + tg + th;
  for (Index k = 0; k < m - th; ++k, ++pos) {
    rowOf[pos] = a + m + th + k;
    colOf[pos] = a + th + k;
  }
  for (Index k = 0; k < m - tg; ++k, ++pos) {
    rowOf[pos] = a + tg + k;
    colOf[pos] = a + m + tg + k;
  }
  return out;
}

/// The interleaved product on the unitary pair with two orthogonal factors,
/// assembled literally from the two extended matrices (entries of g spread
/// over head+own-tail coordinates, identity on the other tail).
template <typename K>
DoubleCoset<K> composeU2Interleaved(const DoubleCoset<K>& g, const DoubleCoset<K>& h) {
  const PairPtr& pair = g.pair();
  if (!(*pair == *h.pair())) throw Error("pair mismatch");
  if (!(*pair == pairUnitaryOO())) throw Error("composeU2Interleaved expects the U / OxO pair");
  if (g.alpha() != h.beta()) throw Error("middle index mismatch");
  if (g.alpha() != g.beta() || h.alpha() != h.beta())
    throw Error("the interleaved form is assembled at matching levels");
  const auto& slots = pair->embedding.slots[0];
  std::vector<Index> resLens;
  struct Range {
    Index head, tg, th, gOff, hOff, resOff;
  };
  std::vector<Range> ranges;
  Index gOff = 0, hOff = 0, resOff = 0;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    Index head = g.alpha()[slots[s].sourceFactor];
    Index tg = g.factor(0).segLens[s] - head;
    Index th = h.factor(0).segLens[s] - head;
    ranges.push_back({head, tg, th, gOff, hOff, resOff});
    resLens.push_back(head + tg + th);
    gOff += head + tg;
    hOff += head + th;
    resOff += head + tg + th;
  }
  const Index n = resOff;
  Mat<K> gExt = Mat<K>::Identity(n, n);
  Mat<K> hExt = Mat<K>::Identity(n, n);
  // Coordinate order per slot: head, g-tail, h-tail.
  auto fill = [&](Mat<K>& ext, const Mat<K>& w, bool useGTail) {
    auto coordMap = [&](const Range& r, Index local, bool& ok) {
      // local indexes the (head + own tail) coordinates of w within the slot.
      ok = true;
      if (local < r.head) return r.resOff + local;
      return useGTail ? r.resOff + r.head + (local - r.head)
                      : r.resOff + r.head + r.tg + (local - r.head);
    };
    for (std::size_t s1 = 0; s1 < ranges.size(); ++s1) {
      const Range& r1 = ranges[s1];
      Index w1len = r1.head + (useGTail ? r1.tg : r1.th);
      Index w1off = useGTail ? r1.gOff : r1.hOff;
      for (Index i = 0; i < w1len; ++i) {
        bool ok1 = false;
        Index ri = coordMap(r1, i, ok1);
        for (std::size_t s2 = 0; s2 < ranges.size(); ++s2) {
          const Range& r2 = ranges[s2];
          Index w2len = r2.head + (useGTail ? r2.tg : r2.th);
          Index w2off = useGTail ? r2.gOff : r2.hOff;
          for (Index j = 0; j < w2len; ++j) {
            bool ok2 = false;
            Index rj = coordMap(r2, j, ok2);
            ext(ri, rj) = w(w1off + i, w2off + j);
          }
        }
      }
    }
  };
  fill(gExt, g.factor(0).mat, /*useGTail=*/true);
  fill(hExt, h.factor(0).mat, /*useGTail=*/false);
  std::vector<FactorRep<K>> reps(1);
  reps[0].mat = gExt * hExt;
  reps[0].segLens = resLens;
  return DoubleCoset<K>(pair, g.beta(), h.alpha(), std::move(reps));
}

namespace detail {

template <typename K>
bool opFixesFirst(const FiniteSupportOperator<K>& op, Index k) {
  Index n = std::max(op.support(), k);
  Mat<K> c = op.coreAt(n);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < n; ++j) {
      if (c(i, j) != (i == j ? K(1) : K(0))) return false;
      if (c(j, i) != (i == j ? K(1) : K(0))) return false;
    }
  return true;
}

}  // namespace detail

/// Least m such that g commutes with the conjugate of h by the block swap at
/// level alpha, exactly.  Defined for pairs with one hom slot per factor.
template <typename K>
Index centerWitness(const PairPtr& pair, const GroupElement<K>& g, const GroupElement<K>& h,
                    const MultiIndex& alpha) {
  if (g.size() != pair->G.arity() || h.size() != pair->G.arity())
    throw Error("element arity mismatch");
  std::vector<Index> alphaOfFactor;
  for (std::size_t t = 0; t < pair->G.arity(); ++t) {
    const auto& slots = pair->embedding.slots[t];
    if (slots.size() != 1 || slots[0].identityBlock)
      throw Error("centerWitness expects one hom slot per factor");
    alphaOfFactor.push_back(alpha[slots[0].sourceFactor]);
    if (!detail::opFixesFirst(h[t], alphaOfFactor.back()))
      throw Error("h must fix the first alpha coordinates");
  }
  Index bound = 1;
  for (std::size_t t = 0; t < pair->G.arity(); ++t)
    bound = std::max({bound, g[t].support(), h[t].support()});
  for (Index m = 1; m <= bound; ++m) {
    bool ok = true;
    for (std::size_t t = 0; t < pair->G.arity() && ok; ++t) {
      Index al = alphaOfFactor[t];
      Index n = std::max({al + 2 * m, g[t].support(), h[t].support()});
      Mat<K> gm = g[t].coreAt(n);
      Mat<K> hm = h[t].coreAt(n);
      Mat<K> th = padIdentity(thetaCore<K>(al, m), n);
      Mat<K> conj = th * hm * th;
      ok = exactEq(Mat<K>(gm * conj), Mat<K>(conj * gm));
    }
    if (ok) return m;
  }
  throw Error("no centrality exponent within the support bound");
}

template <typename K>
struct CommutativityWitnessResult {
  std::vector<SignedPerm> conjugator;  // per heavy factor, on level-0 tails
  bool verified = false;
  DoubleCoset<K> gh;
  DoubleCoset<K> hg;
};

/// Explicit conjugator exchanging the two joined blocks of a level-0 product
/// on a pure pair: J rep(g o h) J^-1 = rep(h o g) exactly, with J a block
/// swap inside the heavy subgroup.
template <typename K>
CommutativityWitnessResult<K> commutativityWitness(const DoubleCoset<K>& g,
                                                   const DoubleCoset<K>& h) {
  const PairPtr& pair = g.pair();
  if (!(*pair == *h.pair())) throw Error("pair mismatch");
  if (!isPure(*pair)) throw Error("commutativityWitness needs a pure pair");
  for (Index v : g.alpha())
    if (v != 0) throw Error("commutativityWitness works at level 0");
  if (g.alpha() != g.beta() || h.alpha() != h.beta() || g.alpha() != h.alpha())
    throw Error("commutativityWitness works at level 0");

  auto [gp, hp] = padToCommon(g, h);
  std::vector<Index> tg = gp.slotLensByHeavyFactor();
  std::vector<Index> th = hp.slotLensByHeavyFactor();
  // Unstripped products: the conjugator is built from the raw joined layout.
  DoubleCoset<K> gh = composeCosets(gp, hp, /*normalize=*/false);
  DoubleCoset<K> hg = composeCosets(hp, gp, /*normalize=*/false);

  CommutativityWitnessResult<K> out{{}, true, gh, hg};
  for (std::size_t j = 0; j < tg.size(); ++j) {
    SignedPerm J;
    J.map.resize(tg[j] + th[j]);
    J.signs.assign(tg[j] + th[j], 1);
    // New order: h-block first, then g-block.
    for (Index i = 0; i < th[j]; ++i) J.map[i] = tg[j] + i;
    for (Index i = 0; i < tg[j]; ++i) J.map[th[j] + i] = i;
    out.conjugator.push_back(std::move(J));
  }
  // Verify J rep(gh) J^-1 == rep(hg) factor by factor.
  for (std::size_t t = 0; t < gh.numFactors() && out.verified; ++t) {
    const auto& slots = pair->embedding.slots[t];
    std::vector<Index> perm;  // new coord -> old coord
    Index off = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      Index len = gh.factor(t).segLens[s];
      const SignedPerm& J = out.conjugator[slots[s].sourceFactor];
      if (len != static_cast<Index>(J.map.size())) { out.verified = false; break; }
      for (Index i = 0; i < len; ++i) perm.push_back(off + J.map[i]);
      off += len;
    }
    if (!out.verified) break;
    Mat<K> conj = submatrix(gh.factor(t).mat, perm, perm);
    out.verified = exactEq(conj, hg.factor(t).mat);
  }
  return out;
}

/// Projection between endomorphism semigroups: g at level beta is carried to
/// mu o g o lambda at level alpha <= beta.
template <typename K>
DoubleCoset<K> projectionPi(const DoubleCoset<K>& g, const MultiIndex& alpha) {
  if (g.alpha() != g.beta()) throw Error("projectionPi expects an endomorphism");
  const MultiIndex& beta = g.beta();
  if (!leqComponentwise(alpha, beta)) throw Error("projectionPi needs alpha <= beta");
  DoubleCoset<K> lam = unitLambda<K>(g.pair(), alpha, beta);
  DoubleCoset<K> mu = unitMu<K>(g.pair(), beta, alpha);
  return composeCosets(mu, composeCosets(g, lam));
}

/// The element 1_level + x placed past the first `level` coordinates of every
/// factor, as an endomorphism-level coset.
template <typename K>
DoubleCoset<K> shiftedElement(const PairPtr& pair, const GroupElement<K>& x, Index level) {
  std::vector<FactorRep<K>> reps;
  for (std::size_t t = 0; t < pair->G.arity(); ++t) {
    const auto& slots = pair->embedding.slots[t];
    if (slots.size() != 1 || slots[0].identityBlock)
      throw Error("shiftedElement expects one hom slot per factor");
    Index n = level + x[t].support();
    FactorRep<K> fr;
    fr.segLens = {n};
    fr.mat = Mat<K>::Identity(n, n);
    fr.mat.bottomRightCorner(x[t].support(), x[t].support()) = x[t].core();
    reps.push_back(std::move(fr));
  }
  MultiIndex idx(pair->L.arity(), level);
  return DoubleCoset<K>(pair, idx, idx, std::move(reps));
}

namespace detail_lift {
inline Mat<GaussRational> liftReal(const Mat<Rational>& m) {
  Mat<GaussRational> r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = GaussRational(m(i, j));
  return r;
}
}  // namespace detail_lift

/// Orthogonal/unitary core for heavy factor sampling, lifted into the
/// coset scalar field when the heavy factor is real inside a complex group.
template <typename K>
Mat<K> sampleHeavyCore(GroupKind lKind, Index size, std::uint64_t seed) {
  if (size == 0) return Mat<K>(0, 0);
  if constexpr (FieldTraits<K>::tag == Field::Q) {
    if (lKind != GroupKind::Orthogonal) throw Error("heavy kind incompatible with field");
    return cayleySample<Rational>(size, seed).coreAt(size);
  } else {
    if (lKind == GroupKind::Unitary) return cayleySample<GaussRational>(size, seed).coreAt(size);
    if (lKind != GroupKind::Orthogonal) throw Error("heavy kind incompatible with field");
    return detail_lift::liftReal(cayleySample<Rational>(size, seed).coreAt(size));
  }
}

/// Two-sided heavy action: multiplies each linked slot by 1_head + u_j (the
/// same heavy element on every slot it feeds), on the left or on the right.
/// On the left the heads are the target indices, on the right the source
/// indices.
template <typename K>
DoubleCoset<K> actHeavy(const DoubleCoset<K>& g, const std::vector<Mat<K>>& u, bool left) {
  const MultiIndex& head = left ? g.beta() : g.alpha();
  const PairPtr& pair = g.pair();
  if (u.size() != pair->L.arity()) throw Error("one heavy core per heavy factor");
  // Pad so each linked slot can hold its block.
  std::vector<std::vector<Index>> lens(g.numFactors());
  g.forEachSlot([&](std::size_t t, std::size_t s, const EmbSlot& slot) {
    Index len = g.factor(t).segLens[s];
    if (!slot.identityBlock)
      len = std::max(len, head[slot.sourceFactor] +
                              static_cast<Index>(u[slot.sourceFactor].rows()));
    lens[t].push_back(len);
  });
  DoubleCoset<K> gp = g.paddedTo(lens);
  std::vector<FactorRep<K>> reps;
  for (std::size_t t = 0; t < gp.numFactors(); ++t) {
    const auto& slots = pair->embedding.slots[t];
    Index n = gp.factor(t).mat.rows();
    Mat<K> act = Mat<K>::Identity(n, n);
    Index off = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      Index len = gp.factor(t).segLens[s];
      if (!slots[s].identityBlock) {
        Index h = head[slots[s].sourceFactor];
        const Mat<K>& core = u[slots[s].sourceFactor];
        act.block(off + h, off + h, core.rows(), core.cols()) = core;
      }
      off += len;
    }
    FactorRep<K> fr;
    fr.segLens = gp.factor(t).segLens;
    fr.mat = left ? Mat<K>(act * gp.factor(t).mat) : Mat<K>(gp.factor(t).mat * act);
    reps.push_back(std::move(fr));
  }
  return DoubleCoset<K>(pair, gp.beta(), gp.alpha(), std::move(reps), /*normalize=*/false);
}

/// Uniformly sampled representative: invertible small-entry cores on GL-type
/// factors, Cayley-transform members on heavy-type factors.
template <typename K>
DoubleCoset<K> randomCoset(const PairPtr& pair, const MultiIndex& beta, const MultiIndex& alpha,
                           Index tail, std::uint64_t seed) {
  std::vector<FactorRep<K>> reps;
  for (std::size_t t = 0; t < pair->G.arity(); ++t) {
    const auto& slots = pair->embedding.slots[t];
    FactorRep<K> fr;
    Index total = 0;
    for (const EmbSlot& slot : slots) {
      Index len = slot.identityBlock
                      ? (slot.infinite ? tail : slot.size)
                      : std::max(alpha[slot.sourceFactor], beta[slot.sourceFactor]) + tail;
      fr.segLens.push_back(len);
      total += len;
    }
    GroupKind kind = pair->G.factor(t).kind;
    std::uint64_t factorSeed = deriveSeed(seed, 31 + t);
    if (kind == GroupKind::GlReal || kind == GroupKind::GlComplex)
      fr.mat = invertibleSample<K>(total, factorSeed);
    else
      fr.mat = total == 0 ? Mat<K>(0, 0) : cayleySample<K>(std::max<Index>(total, 1), factorSeed).coreAt(total);
    reps.push_back(std::move(fr));
  }
  return DoubleCoset<K>(pair, beta, alpha, std::move(reps), /*normalize=*/false);
}

}  // namespace cosets
