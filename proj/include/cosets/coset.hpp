#pragma once

// Double cosets as morphisms: a representative working matrix per group
// factor, organized in segments (one per embedding slot), with source and
// target multi-indices over the heavy factors.  The stabilized product is
// computed by the block formula
//
//   [A B]   [P Q]   [AP  B  AQ]
//   [C D] o [R T] = [CP  D  CQ]
//                   [R   0  T ]
//
// applied jointly over all slots of a factor, which reproduces the
// interleaved pattern on multi-slot pairs.

#include <memory>
#include <utility>
#include <vector>

#include "cosets/charfn.hpp"
#include "cosets/embedding.hpp"

namespace cosets {

using MultiIndex = std::vector<Index>;

inline bool leqComponentwise(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

template <typename K>
struct FactorRep {
  Mat<K> mat;
  std::vector<Index> segLens;  // one entry per slot of this factor
};

using PairPtr = std::shared_ptr<const PairDescriptor>;

template <typename K>
class DoubleCoset {
public:
  DoubleCoset(PairPtr pair, MultiIndex beta, MultiIndex alpha, std::vector<FactorRep<K>> reps,
              bool normalize = true)
      : pair_(std::move(pair)), beta_(std::move(beta)), alpha_(std::move(alpha)),
        reps_(std::move(reps)) {
    validate();
    if (normalize) strip();
  }

  /// Single-factor convenience: the segment structure is inferred by putting
  /// all working coordinates into the unique slot.
  static DoubleCoset fromMatrix(PairPtr pair, MultiIndex beta, MultiIndex alpha, Mat<K> m) {
    if (pair->G.arity() != 1 || pair->embedding.slots[0].size() != 1)
      throw Error("fromMatrix needs a single-factor, single-slot pair");
    std::vector<FactorRep<K>> reps(1);
    reps[0].segLens = {m.rows()};
    reps[0].mat = std::move(m);
    return DoubleCoset(std::move(pair), std::move(beta), std::move(alpha), std::move(reps));
  }

  const PairPtr& pair() const { return pair_; }
  const MultiIndex& alpha() const { return alpha_; }
  const MultiIndex& beta() const { return beta_; }
  std::size_t numFactors() const { return reps_.size(); }
  const FactorRep<K>& factor(std::size_t t) const { return reps_[t]; }

  /// Indices of row coordinates not moved by the left heavy action.
  std::vector<Index> exposedRows(std::size_t t) const { return exposed(t, beta_); }
  /// Indices of column coordinates not moved by the right heavy action.
  std::vector<Index> exposedCols(std::size_t t) const { return exposed(t, alpha_); }

  /// Extends slot working lengths; padding appends identity coordinates at
  /// segment ends and never changes the coset.
  DoubleCoset paddedTo(const std::vector<std::vector<Index>>& targetLens) const {
    std::vector<FactorRep<K>> out;
    for (std::size_t t = 0; t < reps_.size(); ++t) {
      const auto& lens = reps_[t].segLens;
      const auto& target = targetLens[t];
      if (target.size() != lens.size()) throw Error("padding slot count mismatch");
      std::vector<Index> oldPos;  // new coordinate -> old coordinate or -1
      Index oldOff = 0;
      for (std::size_t s = 0; s < lens.size(); ++s) {
        if (target[s] < lens[s]) throw Error("padding cannot shrink a segment");
        for (Index i = 0; i < target[s]; ++i)
          oldPos.push_back(i < lens[s] ? oldOff + i : Index(-1));
        oldOff += lens[s];
      }
      Index n = static_cast<Index>(oldPos.size());
      Mat<K> m = Mat<K>::Identity(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          if (oldPos[i] >= 0 && oldPos[j] >= 0) m(i, j) = reps_[t].mat(oldPos[i], oldPos[j]);
          else if (i != j) m(i, j) = K(0);
      FactorRep<K> fr;
      fr.mat = std::move(m);
      fr.segLens = target;
      out.push_back(std::move(fr));
    }
    return DoubleCoset(pair_, beta_, alpha_, std::move(out), /*normalize=*/false);
  }

  /// Per-heavy-factor common working tail length across all linked slots.
  std::vector<Index> slotLensByHeavyFactor() const {
    std::vector<Index> lens(pair_->L.arity(), 0);
    forEachSlot([&](std::size_t t, std::size_t s, const EmbSlot& slot) {
      if (!slot.identityBlock)
        lens[slot.sourceFactor] = std::max(lens[slot.sourceFactor], reps_[t].segLens[s]);
    });
    return lens;
  }

  template <typename F>
  void forEachSlot(F&& f) const {
    for (std::size_t t = 0; t < reps_.size(); ++t)
      for (std::size_t s = 0; s < pair_->embedding.slots[t].size(); ++s)
        f(t, s, pair_->embedding.slots[t][s]);
  }

private:
  void validate() {
    pair_->validate();
    if (fieldOfKind(pair_->G.factor(0).kind) != FieldTraits<K>::tag)
      throw Error("scalar field does not match the group field");
    for (std::size_t t = 0; t < pair_->G.arity(); ++t)
      if (fieldOfKind(pair_->G.factor(t).kind) != FieldTraits<K>::tag)
        throw Error("mixed-field product groups are not supported for cosets");
    if (alpha_.size() != pair_->L.arity() || beta_.size() != pair_->L.arity())
      throw Error("multi-index arity must match the heavy factor count");
    for (Index v : alpha_)
      if (v < 0) throw Error("negative index");
    for (Index v : beta_)
      if (v < 0) throw Error("negative index");
    if (reps_.size() != pair_->G.arity()) throw Error("one representative per group factor");
    for (std::size_t t = 0; t < reps_.size(); ++t) {
      const auto& slots = pair_->embedding.slots[t];
      const FactorRep<K>& fr = reps_[t];
      if (fr.segLens.size() != slots.size()) throw Error("segment count must match slot count");
      Index total = 0;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        const EmbSlot& slot = slots[s];
        Index len = fr.segLens[s];
        if (len < 0) throw Error("negative segment length");
        if (slot.identityBlock && !slot.infinite && len != slot.size)
          throw Error("finite identity segments have fixed length");
        if (!slot.identityBlock) {
          if (homMultiplier(slot.tag) != 1)
            throw Error("realification slots are not supported at the coset level");
          Index need = std::max(alpha_[slot.sourceFactor], beta_[slot.sourceFactor]);
          if (len < need) throw Error("segment shorter than its head indices");
        }
        total += len;
      }
      if (fr.mat.rows() != total || fr.mat.cols() != total)
        throw Error("representative size does not match segment lengths");
      GroupKind kind = pair_->G.factor(t).kind;
      if (kind == GroupKind::Orthogonal || kind == GroupKind::Unitary) {
        if (!coreSatisfies(fr.mat, kind))
          throw Error("representative is not a member of the group factor");
      } else if (!isInvertible(fr.mat)) {
        throw Error("representative is not invertible");
      }
    }
  }

  std::vector<Index> exposed(std::size_t t, const MultiIndex& idx) const {
    std::vector<Index> out;
    Index off = 0;
    const auto& slots = pair_->embedding.slots[t];
    for (std::size_t s = 0; s < slots.size(); ++s) {
      Index len = reps_[t].segLens[s];
      if (slots[s].identityBlock) {
        for (Index i = 0; i < len; ++i) out.push_back(off + i);
      } else {
        Index head = idx[slots[s].sourceFactor];
        for (Index i = 0; i < head && i < len; ++i) out.push_back(off + i);
      }
      off += len;
    }
    return out;
  }

  /// Drops tail coordinates on which every linked slot acts as the identity;
  /// infinite identity segments shed identity coordinates too.
  void strip() {
    const std::size_t nl = pair_->L.arity();
    // Links per heavy factor: (factor, slot, coordinate offset of slot).
    struct Link {
      std::size_t t, s;
      Index off;
    };
    std::vector<std::vector<Link>> links(nl);
    std::vector<std::vector<Index>> offsets(reps_.size());
    for (std::size_t t = 0; t < reps_.size(); ++t) {
      Index off = 0;
      for (std::size_t s = 0; s < pair_->embedding.slots[t].size(); ++s) {
        offsets[t].push_back(off);
        const EmbSlot& slot = pair_->embedding.slots[t][s];
        if (!slot.identityBlock) links[slot.sourceFactor].push_back({t, s, off});
        off += reps_[t].segLens[s];
      }
    }
    auto identityAt = [&](std::size_t t, Index c) {
      const Mat<K>& m = reps_[t].mat;
      if (m(c, c) != K(1)) return false;
      for (Index i = 0; i < m.rows(); ++i) {
        if (i == c) continue;
        if (m(i, c) != K(0) || m(c, i) != K(0)) return false;
      }
      return true;
    };
    std::vector<std::vector<std::vector<bool>>> drop(reps_.size());
    for (std::size_t t = 0; t < reps_.size(); ++t)
      for (std::size_t s = 0; s < pair_->embedding.slots[t].size(); ++s)
        drop[t].push_back(std::vector<bool>(reps_[t].segLens[s], false));

    for (std::size_t j = 0; j < nl; ++j) {
      Index head = std::max(alpha_[j], beta_[j]);
      Index maxLen = 0;
      for (const Link& l : links[j]) maxLen = std::max(maxLen, reps_[l.t].segLens[l.s]);
      for (Index c = head; c < maxLen; ++c) {
        bool ok = true;
        for (const Link& l : links[j]) {
          if (c >= reps_[l.t].segLens[l.s]) continue;  // implicit identity
          if (!identityAt(l.t, l.off + c)) { ok = false; break; }
        }
        if (!ok) continue;
        for (const Link& l : links[j])
          if (c < reps_[l.t].segLens[l.s]) drop[l.t][l.s][c] = true;
      }
    }
    // Infinite identity segments: drop plain identity coordinates.
    for (std::size_t t = 0; t < reps_.size(); ++t)
      for (std::size_t s = 0; s < pair_->embedding.slots[t].size(); ++s) {
        const EmbSlot& slot = pair_->embedding.slots[t][s];
        if (!slot.identityBlock || !slot.infinite) continue;
        for (Index c = 0; c < reps_[t].segLens[s]; ++c)
          if (identityAt(t, offsets[t][s] + c)) drop[t][s][c] = true;
      }

    for (std::size_t t = 0; t < reps_.size(); ++t) {
      std::vector<Index> keep;
      std::vector<Index> newLens;
      Index off = 0;
      for (std::size_t s = 0; s < pair_->embedding.slots[t].size(); ++s) {
        Index kept = 0;
        for (Index c = 0; c < reps_[t].segLens[s]; ++c)
          if (!drop[t][s][c]) {
            keep.push_back(off + c);
            ++kept;
          }
        newLens.push_back(kept);
        off += reps_[t].segLens[s];
      }
      if (keep.size() != static_cast<std::size_t>(reps_[t].mat.rows())) {
        reps_[t].mat = submatrix(reps_[t].mat, keep, keep);
        reps_[t].segLens = std::move(newLens);
      }
    }
  }

  PairPtr pair_;
  MultiIndex beta_, alpha_;
  std::vector<FactorRep<K>> reps_;
};

namespace detail {

enum class RowSrc { FromG, FromH };
enum class ColSrc { FromH, GTail };

}  // namespace detail

/// Pads two cosets so that, per heavy factor, every linked slot shares a
/// common working length (and infinite identity segments match).
template <typename K>
std::pair<DoubleCoset<K>, DoubleCoset<K>> padToCommon(const DoubleCoset<K>& a,
                                                      const DoubleCoset<K>& b) {
  std::vector<Index> byFactor(a.pair()->L.arity(), 0);
  for (std::size_t j = 0; j < byFactor.size(); ++j)
    byFactor[j] = std::max(a.slotLensByHeavyFactor()[j], b.slotLensByHeavyFactor()[j]);
  std::vector<std::vector<Index>> lens(a.numFactors());
  a.forEachSlot([&](std::size_t t, std::size_t s, const EmbSlot& slot) {
    Index len;
    if (slot.identityBlock)
      len = slot.infinite ? std::max(a.factor(t).segLens[s], b.factor(t).segLens[s]) : slot.size;
    else
      len = byFactor[slot.sourceFactor];
    lens[t].push_back(len);
  });
  return {a.paddedTo(lens), b.paddedTo(lens)};
}

/// The stabilized product of double cosets.
template <typename K>
DoubleCoset<K> composeCosets(const DoubleCoset<K>& g, const DoubleCoset<K>& h,
                             bool normalize = true) {
  if (!(*g.pair() == *h.pair())) throw Error("compose: pair mismatch");
  if (g.alpha() != h.beta()) throw Error("compose: middle index mismatch");
  const PairPtr& pair = g.pair();
  const MultiIndex& mid = g.alpha();

  // Infinite identity segments carry no head bookkeeping, so their working
  // lengths must agree before the middle contraction.
  bool needPad = false;
  g.forEachSlot([&](std::size_t t, std::size_t s, const EmbSlot& slot) {
    if (slot.identityBlock && slot.infinite &&
        g.factor(t).segLens[s] != h.factor(t).segLens[s])
      needPad = true;
  });
  if (needPad) {
    std::vector<std::vector<Index>> gl(g.numFactors()), hl(h.numFactors());
    g.forEachSlot([&](std::size_t t, std::size_t s, const EmbSlot& slot) {
      Index lg = g.factor(t).segLens[s], lh = h.factor(t).segLens[s];
      Index common = slot.identityBlock && slot.infinite ? std::max(lg, lh) : lg;
      gl[t].push_back(common);
      hl[t].push_back(slot.identityBlock && slot.infinite ? common : lh);
    });
    return composeCosets(g.paddedTo(gl), h.paddedTo(hl), normalize);
  }

  std::vector<FactorRep<K>> out;
  for (std::size_t t = 0; t < g.numFactors(); ++t) {
    const auto& slots = pair->embedding.slots[t];
    const Mat<K>& wg = g.factor(t).mat;
    const Mat<K>& wh = h.factor(t).mat;

    std::vector<std::pair<detail::RowSrc, Index>> rowSrc;
    std::vector<std::pair<detail::ColSrc, Index>> colSrc;
    std::vector<Index> gColExp, hRowExp;
    std::vector<Index> resLens;
    Index gOff = 0, hOff = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const EmbSlot& slot = slots[s];
      Index lg = g.factor(t).segLens[s];
      Index lh = h.factor(t).segLens[s];
      if (slot.identityBlock) {
        if (lg != lh) throw Error("compose: identity segment lengths must agree");
        resLens.push_back(lg);
        for (Index i = 0; i < lg; ++i) {
          rowSrc.push_back({detail::RowSrc::FromG, gOff + i});
          colSrc.push_back({detail::ColSrc::FromH, hOff + i});
          gColExp.push_back(gOff + i);
          hRowExp.push_back(hOff + i);
        }
      } else {
        const Index j = static_cast<Index>(slot.sourceFactor);
        const Index b = mid[j];
        const Index gamma = g.beta()[j];
        const Index a = h.alpha()[j];
        const Index lr = lg + lh - b;
        resLens.push_back(lr);
        for (Index i = 0; i < lr; ++i) {
          // Row side: target heads and g's tail rows come from g, then h's.
          if (i < lg)
            rowSrc.push_back({detail::RowSrc::FromG, gOff + i});
          else
            rowSrc.push_back({detail::RowSrc::FromH, hOff + b + (i - lg)});
          // Column side: source heads from h, then g's tail columns, then h's.
          if (i < a)
            colSrc.push_back({detail::ColSrc::FromH, hOff + i});
          else if (i < a + (lg - b))
            colSrc.push_back({detail::ColSrc::GTail, gOff + b + (i - a)});
          else
            colSrc.push_back({detail::ColSrc::FromH, hOff + b + (i - a - (lg - b))});
        }
        (void)gamma;
        for (Index i = 0; i < b; ++i) {
          gColExp.push_back(gOff + i);
          hRowExp.push_back(hOff + i);
        }
      }
      gOff += lg;
      hOff += lh;
    }

    const Index n = static_cast<Index>(rowSrc.size());
    Mat<K> res(n, n);
    const Index midDim = static_cast<Index>(gColExp.size());
    for (Index r = 0; r < n; ++r) {
      for (Index c = 0; c < n; ++c) {
        const auto [rs, ri] = rowSrc[r];
        const auto [cs, ci] = colSrc[c];
        if (cs == detail::ColSrc::GTail) {
          res(r, c) = rs == detail::RowSrc::FromG ? wg(ri, ci) : K(0);
        } else if (rs == detail::RowSrc::FromH) {
          res(r, c) = wh(ri, ci);
        } else {
          K acc(0);
          for (Index k = 0; k < midDim; ++k) acc += wg(ri, gColExp[k]) * wh(hRowExp[k], ci);
          res(r, c) = acc;
        }
      }
    }
    FactorRep<K> fr;
    fr.mat = std::move(res);
    fr.segLens = std::move(resLens);
    out.push_back(std::move(fr));
  }
  return DoubleCoset<K>(pair, g.beta(), h.alpha(), std::move(out), normalize);
}

template <typename K>
DoubleCoset<K> involution(const DoubleCoset<K>& g) {
  std::vector<FactorRep<K>> out;
  for (std::size_t t = 0; t < g.numFactors(); ++t) {
    FactorRep<K> fr;
    fr.mat = inverseOf(g.factor(t).mat);
    fr.segLens = g.factor(t).segLens;
    out.push_back(std::move(fr));
  }
  return DoubleCoset<K>(g.pair(), g.alpha(), g.beta(), std::move(out));
}

/// lambda_{alpha,beta}: the class of the identity viewed from alpha to beta.
template <typename K>
DoubleCoset<K> unitLambda(const PairPtr& pair, const MultiIndex& alpha, const MultiIndex& beta) {
  if (!leqComponentwise(alpha, beta)) throw Error("unitLambda needs alpha <= beta");
  std::vector<FactorRep<K>> reps;
  for (std::size_t t = 0; t < pair->G.arity(); ++t) {
    FactorRep<K> fr;
    Index total = 0;
    for (const EmbSlot& slot : pair->embedding.slots[t]) {
      Index len = slot.identityBlock ? (slot.infinite ? 0 : slot.size)
                                     : beta[slot.sourceFactor];
      fr.segLens.push_back(len);
      total += len;
    }
    fr.mat = Mat<K>::Identity(total, total);
    reps.push_back(std::move(fr));
  }
  return DoubleCoset<K>(pair, beta, alpha, std::move(reps), /*normalize=*/false);
}

template <typename K>
DoubleCoset<K> unitMu(const PairPtr& pair, const MultiIndex& beta, const MultiIndex& alpha) {
  return involution(unitLambda<K>(pair, alpha, beta));
}

template <typename K>
DoubleCoset<K> unitCoset(const PairPtr& pair, const MultiIndex& alpha) {
  return unitLambda<K>(pair, alpha, alpha);
}

/// psi_{alpha,beta} = lambda o mu: a nontrivial idempotent at level beta.
template <typename K>
DoubleCoset<K> psiIdempotent(const PairPtr& pair, const MultiIndex& alpha,
                             const MultiIndex& beta) {
  return composeCosets(unitLambda<K>(pair, alpha, beta), unitMu<K>(pair, beta, alpha));
}

template <typename K>
struct CosetInvariants {
  std::vector<Mat<K>> corner;                       // per factor
  std::vector<std::vector<LinearRelation<K>>> chi;  // per factor, per sample point

  friend bool operator==(const CosetInvariants& a, const CosetInvariants& b) {
    if (a.corner.size() != b.corner.size() || a.chi.size() != b.chi.size()) return false;
    for (std::size_t t = 0; t < a.corner.size(); ++t)
      if (!exactEq(a.corner[t], b.corner[t])) return false;
    for (std::size_t t = 0; t < a.chi.size(); ++t) {
      if (a.chi[t].size() != b.chi[t].size()) return false;
      for (std::size_t i = 0; i < a.chi[t].size(); ++i)
        if (a.chi[t][i] != b.chi[t][i]) return false;
    }
    return true;
  }
  friend bool operator!=(const CosetInvariants& a, const CosetInvariants& b) { return !(a == b); }
};

/// Exposed-first reordering of a factor representative; chi is evaluated on
/// this matrix with contiguous head blocks.
template <typename K>
Mat<K> exposedFirstMatrix(const DoubleCoset<K>& g, std::size_t t) {
  std::vector<Index> rows = g.exposedRows(t), cols = g.exposedCols(t);
  std::vector<bool> isRow(g.factor(t).mat.rows(), false), isCol(g.factor(t).mat.cols(), false);
  for (Index r : rows) isRow[r] = true;
  for (Index c : cols) isCol[c] = true;
  for (Index r = 0; r < g.factor(t).mat.rows(); ++r)
    if (!isRow[r]) rows.push_back(r);
  for (Index c = 0; c < g.factor(t).mat.cols(); ++c)
    if (!isCol[c]) cols.push_back(c);
  return submatrix(g.factor(t).mat, rows, cols);
}

template <typename K>
LinearRelation<K> charFunction(const DoubleCoset<K>& g, const ProjectivePoint<K>& lambda) {
  if (g.numFactors() != 1) throw Error("charFunction expects a single-factor pair");
  return charFunctionFromWorking(exposedFirstMatrix(g, 0),
                                 static_cast<Index>(g.exposedRows(0).size()),
                                 static_cast<Index>(g.exposedCols(0).size()), lambda);
}

template <typename K>
CosetInvariants<K> cosetInvariants(const DoubleCoset<K>& g) {
  CosetInvariants<K> inv;
  for (std::size_t t = 0; t < g.numFactors(); ++t) {
    auto er = g.exposedRows(t);
    auto ec = g.exposedCols(t);
    inv.corner.push_back(submatrix(g.factor(t).mat, er, ec));
    Mat<K> m = exposedFirstMatrix(g, t);
    std::vector<LinearRelation<K>> samples;
    for (const auto& pt : chiSamplePoints<K>())
      samples.push_back(charFunctionFromWorking(m, static_cast<Index>(er.size()),
                                                static_cast<Index>(ec.size()), pt));
    inv.chi.push_back(std::move(samples));
  }
  return inv;
}

/// chi multiplicativity: the characteristic function of a product is the
/// pointwise composition of the factors' characteristic functions.
template <typename K>
bool charMultiplicativityCheck(const DoubleCoset<K>& g, const DoubleCoset<K>& h,
                               const std::vector<ProjectivePoint<K>>& lambdas) {
  DoubleCoset<K> prod = composeCosets(g, h);
  for (const auto& lambda : lambdas) {
    LinearRelation<K> lhs = charFunction(prod, lambda);
    LinearRelation<K> rhs = relationCompose(charFunction(g, lambda), charFunction(h, lambda));
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace cosets
