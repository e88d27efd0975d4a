#pragma once

// Straight embeddings of heavy groups: block-diagonal maps assembled from
// identity blocks and trivial homomorphisms (inclusion, conjugation,
// complexification, realification).  A pair descriptor couples a classical
// group G with a heavy subgroup L straightly embedded into the maximal heavy
// subgroup of G.

#include <string>
#include <utility>
#include <vector>

#include "cosets/group.hpp"

namespace cosets {

enum class TrivialHom { Id, Conj, OToU, UToO2 };

inline std::string trivialHomName(TrivialHom t) {
  switch (t) {
    case TrivialHom::Id: return "id";
    case TrivialHom::Conj: return "conj";
    case TrivialHom::OToU: return "o_to_u";
    case TrivialHom::UToO2: return "u_to_o2";
  }
  throw Error("bad trivial hom tag");
}

inline TrivialHom trivialHomFromName(const std::string& s) {
  if (s == "id") return TrivialHom::Id;
  if (s == "conj") return TrivialHom::Conj;
  if (s == "o_to_u") return TrivialHom::OToU;
  if (s == "u_to_o2") return TrivialHom::UToO2;
  throw Error("unknown trivial hom tag: " + s);
}

/// Dimension multiplier of a trivial homomorphism (realification doubles).
inline Index homMultiplier(TrivialHom t) { return t == TrivialHom::UToO2 ? 2 : 1; }

/// A diagonal slot of a straight embedding.
struct EmbSlot {
  bool identityBlock = false;
  bool infinite = false;      // identity blocks only
  Index size = 0;             // finite identity blocks only
  TrivialHom tag = TrivialHom::Id;
  std::size_t sourceFactor = 0;

  static EmbSlot identityOf(Index a) {
    if (a < 1) throw Error("identity block needs size >= 1");
    EmbSlot s;
    s.identityBlock = true;
    s.size = a;
    return s;
  }
  static EmbSlot infiniteIdentity() {
    EmbSlot s;
    s.identityBlock = true;
    s.infinite = true;
    return s;
  }
  static EmbSlot hom(TrivialHom tag, std::size_t sourceFactor) {
    EmbSlot s;
    s.tag = tag;
    s.sourceFactor = sourceFactor;
    return s;
  }

  friend bool operator==(const EmbSlot& a, const EmbSlot& b) {
    if (a.identityBlock != b.identityBlock) return false;
    if (a.identityBlock) return a.infinite == b.infinite && (a.infinite || a.size == b.size);
    return a.tag == b.tag && a.sourceFactor == b.sourceFactor;
  }
};

inline bool homTagTypeChecks(TrivialHom tag, GroupKind source, GroupKind target) {
  switch (tag) {
    case TrivialHom::Id: return source == target;
    case TrivialHom::Conj: return source == GroupKind::Unitary && target == GroupKind::Unitary;
    case TrivialHom::OToU:
      return source == GroupKind::Orthogonal && target == GroupKind::Unitary;
    case TrivialHom::UToO2:
      return source == GroupKind::Unitary && target == GroupKind::Orthogonal;
  }
  return false;
}

struct EmbeddingSpec {
  GroupDescriptor source;  // heavy, possibly a product
  GroupDescriptor target;  // heavy, possibly a product
  std::vector<std::vector<EmbSlot>> slots;  // one slot list per target factor

  void validate() const {
    if (slots.size() != target.arity()) throw Error("embedding slot lists must match target arity");
    for (std::size_t t = 0; t < target.arity(); ++t) {
      GroupKind tk = target.factor(t).kind;
      if (!isHeavyKind(tk)) throw Error("embedding target must be heavy");
      bool sawHom = false;
      for (std::size_t s = 0; s < slots[t].size(); ++s) {
        const EmbSlot& slot = slots[t][s];
        if (slot.identityBlock) {
          if (slot.infinite && s + 1 != slots[t].size())
            throw Error("infinite identity blocks must be final slots");
          continue;
        }
        sawHom = true;
        if (slot.sourceFactor >= source.arity()) throw Error("slot source factor out of range");
        GroupKind sk = source.factor(slot.sourceFactor).kind;
        if (!isHeavyKind(sk)) throw Error("embedding source must be heavy");
        if (!homTagTypeChecks(slot.tag, sk, tk))
          throw Error("trivial hom tag " + trivialHomName(slot.tag) + " does not map " +
                      groupKindName(sk) + " into " + groupKindName(tk));
      }
      if (!sawHom) throw Error("each target factor needs at least one hom slot");
    }
  }

  friend bool operator==(const EmbeddingSpec& a, const EmbeddingSpec& b) {
    return a.source == b.source && a.target == b.target && a.slots == b.slots;
  }
};

namespace detail {

inline Mat<GaussRational> liftToGauss(const Mat<Rational>& m) {
  Mat<GaussRational> r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = GaussRational(m(i, j));
  return r;
}

/// a+bi -> [[a,-b],[b,a]] blockwise.
inline Mat<Rational> realify(const Mat<GaussRational>& m) {
  Mat<Rational> r(2 * m.rows(), 2 * m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      r(2 * i, 2 * j) = m(i, j).re();
      r(2 * i, 2 * j + 1) = -m(i, j).im();
      r(2 * i + 1, 2 * j) = m(i, j).im();
      r(2 * i + 1, 2 * j + 1) = m(i, j).re();
    }
  return r;
}

template <typename SrcK, typename DstK>
Mat<DstK> applyTrivialHom(TrivialHom tag, const Mat<SrcK>& core);

template <>
inline Mat<Rational> applyTrivialHom<Rational, Rational>(TrivialHom tag, const Mat<Rational>& core) {
  if (tag != TrivialHom::Id) throw Error("field mismatch for trivial hom");
  return core;
}

template <>
inline Mat<GaussRational> applyTrivialHom<GaussRational, GaussRational>(
    TrivialHom tag, const Mat<GaussRational>& core) {
  if (tag == TrivialHom::Id) return core;
  if (tag == TrivialHom::Conj) return conjugateOf(core);
  throw Error("field mismatch for trivial hom");
}

template <>
inline Mat<GaussRational> applyTrivialHom<Rational, GaussRational>(TrivialHom tag,
                                                                   const Mat<Rational>& core) {
  if (tag != TrivialHom::OToU) throw Error("field mismatch for trivial hom");
  return liftToGauss(core);
}

template <>
inline Mat<Rational> applyTrivialHom<GaussRational, Rational>(TrivialHom tag,
                                                              const Mat<GaussRational>& core) {
  if (tag != TrivialHom::UToO2) throw Error("field mismatch for trivial hom");
  return realify(core);
}

}  // namespace detail

/// Image of a source element under a straight embedding, flattened to one
/// operator per target factor.  Coordinates of a target factor: the finite
/// identity blocks first (in slot order), then the infinite slots interleaved
/// round-robin, so every image is finite-support.
template <typename DstK, typename SrcK>
GroupElement<DstK> embedStraight(const EmbeddingSpec& spec, const GroupElement<SrcK>& g) {
  spec.validate();
  if (g.size() != spec.source.arity()) throw Error("element arity does not match embedding source");
  GroupElement<DstK> out;
  for (std::size_t t = 0; t < spec.target.arity(); ++t) {
    const auto& slots = spec.slots[t];
    Index idPrefix = 0;
    for (const EmbSlot& s : slots)
      if (s.identityBlock && !s.infinite) idPrefix += s.size;
    std::vector<std::pair<std::size_t, Mat<DstK>>> blocks;  // (round-robin rank, block)
    std::size_t numInfinite = 0;
    Index maxLocal = 0;
    for (const EmbSlot& s : slots) {
      if (s.identityBlock) {
        if (s.infinite) ++numInfinite;
        continue;
      }
      Mat<DstK> block =
          detail::applyTrivialHom<SrcK, DstK>(s.tag, g[s.sourceFactor].core());
      maxLocal = std::max(maxLocal, block.rows());
      blocks.emplace_back(numInfinite, std::move(block));
      ++numInfinite;
    }
    Index stride = static_cast<Index>(numInfinite);
    Index total = idPrefix + stride * maxLocal;
    Mat<DstK> core = Mat<DstK>::Identity(total, total);
    for (const auto& [rank, block] : blocks) {
      for (Index i = 0; i < block.rows(); ++i)
        for (Index j = 0; j < block.cols(); ++j)
          core(idPrefix + i * stride + static_cast<Index>(rank),
               idPrefix + j * stride + static_cast<Index>(rank)) = block(i, j);
    }
    out.emplace_back(spec.target.factor(t).kind, std::move(core));
  }
  return out;
}

/// A (G, L)-pair: classical group G, heavy L straightly embedded into the
/// maximal heavy subgroup of G.
struct PairDescriptor {
  GroupDescriptor G;
  GroupDescriptor L;
  EmbeddingSpec embedding;

  void validate() const {
    embedding.validate();
    if (!(embedding.source == L)) throw Error("embedding source must be L");
    if (embedding.target.arity() != G.arity())
      throw Error("embedding target must match the heavy subgroup of G factorwise");
    for (std::size_t t = 0; t < G.arity(); ++t) {
      if (embedding.target.factor(t).kind != maximalHeavyOf(G.factor(t).kind))
        throw Error("embedding target factor is not the maximal heavy subgroup");
    }
  }

  friend bool operator==(const PairDescriptor& a, const PairDescriptor& b) {
    return a.G == b.G && a.L == b.L && a.embedding == b.embedding;
  }
};

/// A pair is pure when the straight embedding carries no identity block.
/// Finite-rank factors are outside this library's group scope, so the block
/// criterion is the whole check.
inline bool isPure(const PairDescriptor& pair) {
  pair.validate();
  for (const auto& slotList : pair.embedding.slots)
    for (const EmbSlot& s : slotList)
      if (s.identityBlock) return false;
  return true;
}

// Ready-made pairs used throughout the tests and suites.

inline PairDescriptor pairGlRealOrthogonal() {
  PairDescriptor p;
  p.G = GroupDescriptor::simple(GroupKind::GlReal);
  p.L = GroupDescriptor::simple(GroupKind::Orthogonal);
  p.embedding.source = p.L;
  p.embedding.target = GroupDescriptor::simple(GroupKind::Orthogonal);
  p.embedding.slots = {{EmbSlot::hom(TrivialHom::Id, 0)}};
  p.validate();
  return p;
}

inline PairDescriptor pairGlComplexUnitary() {
  PairDescriptor p;
  p.G = GroupDescriptor::simple(GroupKind::GlComplex);
  p.L = GroupDescriptor::simple(GroupKind::Unitary);
  p.embedding.source = p.L;
  p.embedding.target = GroupDescriptor::simple(GroupKind::Unitary);
  p.embedding.slots = {{EmbSlot::hom(TrivialHom::Id, 0)}};
  p.validate();
  return p;
}

/// r copies of GL(R) with the orthogonal group embedded diagonally.
inline PairDescriptor pairDiagonal(std::size_t r) {
  if (r < 2) throw Error("diagonal pair needs at least 2 factors");
  PairDescriptor p;
  std::vector<GroupDescriptor> gs(r, GroupDescriptor::simple(GroupKind::GlReal));
  p.G = GroupDescriptor::product(gs);
  p.L = GroupDescriptor::simple(GroupKind::Orthogonal);
  p.embedding.source = p.L;
  std::vector<GroupDescriptor> ks(r, GroupDescriptor::simple(GroupKind::Orthogonal));
  p.embedding.target = GroupDescriptor::product(ks);
  p.embedding.slots.assign(r, {EmbSlot::hom(TrivialHom::Id, 0)});
  p.validate();
  return p;
}

/// G = U with L = O x O in two interleaved slots.
inline PairDescriptor pairUnitaryOO() {
  PairDescriptor p;
  p.G = GroupDescriptor::simple(GroupKind::Unitary);
  p.L = GroupDescriptor::product({GroupDescriptor::simple(GroupKind::Orthogonal),
                                  GroupDescriptor::simple(GroupKind::Orthogonal)});
  p.embedding.source = p.L;
  p.embedding.target = GroupDescriptor::simple(GroupKind::Unitary);
  p.embedding.slots = {{EmbSlot::hom(TrivialHom::OToU, 0), EmbSlot::hom(TrivialHom::OToU, 1)}};
  p.validate();
  return p;
}

}  // namespace cosets
