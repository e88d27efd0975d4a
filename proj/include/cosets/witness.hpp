#pragma once

// Bounded search for two-sided signed-permutation witnesses: given working
// matrices A_t, B_t per group factor and a linkage of tail coordinates to
// heavy-subgroup factors, find signed permutations (one per heavy factor and
// side) with B = U A V exactly.  The same heavy-factor permutation is applied
// to every coordinate block it is linked to, so witnesses are genuine
// heavy-subgroup elements.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "cosets/matrix.hpp"

namespace cosets {

struct SignedPerm {
  std::vector<Index> map;  // target local index -> source local index
  std::vector<int> signs;  // per target local index, +1 / -1

  static SignedPerm identity(Index n) {
    SignedPerm p;
    p.map.resize(n);
    p.signs.assign(n, 1);
    for (Index i = 0; i < n; ++i) p.map[i] = i;
    return p;
  }
};

struct TwoSidedWitness {
  std::vector<SignedPerm> left;   // per heavy factor: row permutation
  std::vector<SignedPerm> right;  // per heavy factor: column permutation
};

/// Coordinate linkage: lfactor < 0 marks a fixed coordinate.
struct CoordLink {
  int lfactor = -1;
  Index local = 0;
};

template <typename K>
struct WitnessProblem {
  std::vector<Mat<K>> a;
  std::vector<Mat<K>> b;
  std::vector<std::vector<CoordLink>> rowLink;  // per factor, per coordinate
  std::vector<std::vector<CoordLink>> colLink;
  int numHeavyFactors = 0;
  std::vector<Index> leftLen;   // per heavy factor: tail length on the row side
  std::vector<Index> rightLen;  // per heavy factor: tail length on the column side
};

namespace detail {

template <typename K>
bool lessScalar(const K& x, const K& y);

template <>
inline bool lessScalar<Rational>(const Rational& x, const Rational& y) {
  return x < y;
}

template <>
inline bool lessScalar<GaussRational>(const GaussRational& x, const GaussRational& y) {
  if (x.re() != y.re()) return x.re() < y.re();
  return x.im() < y.im();
}

template <typename K>
K canonicalUpToSign(const K& x) {
  K neg = -x;
  return lessScalar(neg, x) ? x : neg;
}

template <typename K>
std::vector<K> columnSignature(const Mat<K>& m, Index c) {
  std::vector<K> sig;
  sig.reserve(m.rows());
  for (Index r = 0; r < m.rows(); ++r) sig.push_back(canonicalUpToSign(m(r, c)));
  std::sort(sig.begin(), sig.end(), lessScalar<K>);
  return sig;
}

template <typename K>
class WitnessSolver {
public:
  WitnessSolver(const WitnessProblem<K>& p, std::uint64_t nodeCap)
      : p_(p), nodeCap_(nodeCap) {
    const std::size_t nf = p_.a.size();
    colOcc_.assign(p_.numHeavyFactors, {});
    rowOcc_.assign(p_.numHeavyFactors, {});
    for (std::size_t t = 0; t < nf; ++t) {
      for (Index c = 0; c < static_cast<Index>(p_.colLink[t].size()); ++c) {
        const CoordLink& l = p_.colLink[t][c];
        if (l.lfactor >= 0) colOcc_[l.lfactor].push_back({t, l.local, c});
      }
      for (Index r = 0; r < static_cast<Index>(p_.rowLink[t].size()); ++r) {
        const CoordLink& l = p_.rowLink[t][r];
        if (l.lfactor >= 0) rowOcc_[l.lfactor].push_back({t, l.local, r});
      }
      std::vector<Index> fixedRows;
      for (Index r = 0; r < p_.a[t].rows(); ++r)
        if (p_.rowLink[t][r].lfactor < 0) fixedRows.push_back(r);
      fixedRows_.push_back(std::move(fixedRows));
    }
  }

  std::optional<TwoSidedWitness> solve() {
    // Trivial witness first.
    bool equal = true;
    for (std::size_t t = 0; t < p_.a.size() && equal; ++t) equal = exactEq(p_.a[t], p_.b[t]);
    if (equal) {
      TwoSidedWitness w;
      for (int j = 0; j < p_.numHeavyFactors; ++j) {
        w.left.push_back(SignedPerm::identity(p_.leftLen[j]));
        w.right.push_back(SignedPerm::identity(p_.rightLen[j]));
      }
      return w;
    }
    sigma_.clear();
    for (int j = 0; j < p_.numHeavyFactors; ++j) {
      ColState st;
      st.map.assign(p_.rightLen[j], -1);
      st.sign.assign(p_.rightLen[j], 1);
      st.used.assign(p_.rightLen[j], false);
      sigma_.push_back(std::move(st));
    }
    nodes_ = 0;
    if (assignColumns(0, 0)) return result_;
    return std::nullopt;
  }

private:
  struct ColState {
    std::vector<Index> map;
    std::vector<int> sign;
    std::vector<bool> used;
  };
  struct Occurrence {
    std::size_t factor;
    Index local;
    Index coord;
  };

  Index coordOfLocal(const std::vector<Occurrence>& occ, std::size_t factor, Index local) const {
    for (const Occurrence& o : occ)
      if (o.factor == factor && o.local == local) return o.coord;
    return -1;
  }

  // Candidate test: mapping b-column local index i' of heavy factor j to
  // a-column local index i with sign s, checked on all fixed rows plus an
  // entry-multiset filter.
  bool colCandidateOk(int j, Index iTo, Index iFrom, int s) {
    for (const Occurrence& o : colOcc_[j]) {
      if (o.local != iTo) continue;
      Index cFrom = coordOfLocal(colOcc_[j], o.factor, iFrom);
      if (cFrom < 0) return false;
      const Mat<K>& A = p_.a[o.factor];
      const Mat<K>& B = p_.b[o.factor];
      for (Index r : fixedRows_[o.factor]) {
        K expect = s > 0 ? A(r, cFrom) : K(-A(r, cFrom));
        if (B(r, o.coord) != expect) return false;
      }
      if (columnSignature(B, o.coord) != columnSignature(A, cFrom)) return false;
    }
    return true;
  }

  bool assignColumns(int j, Index iTo) {
    if (j == p_.numHeavyFactors) return assignRowsAll();
    if (iTo == p_.rightLen[j]) return assignColumns(j + 1, 0);
    for (Index iFrom = 0; iFrom < p_.rightLen[j]; ++iFrom) {
      if (sigma_[j].used[iFrom]) continue;
      for (int s : {1, -1}) {
        if (++nodes_ > nodeCap_) return false;
        if (!colCandidateOk(j, iTo, iFrom, s)) continue;
        sigma_[j].map[iTo] = iFrom;
        sigma_[j].sign[iTo] = s;
        sigma_[j].used[iFrom] = true;
        if (assignColumns(j, iTo + 1)) return true;
        sigma_[j].used[iFrom] = false;
      }
    }
    return false;
  }

  // With sigma fixed, remap a's columns and match rows per heavy factor.
  bool assignRowsAll() {
    a2_.clear();
    for (std::size_t t = 0; t < p_.a.size(); ++t) {
      const Mat<K>& A = p_.a[t];
      Mat<K> A2(A.rows(), A.cols());
      for (Index c = 0; c < A.cols(); ++c) {
        const CoordLink& l = p_.colLink[t][c];
        if (l.lfactor < 0) {
          A2.col(c) = A.col(c);
        } else {
          Index src = coordOfLocal(colOcc_[l.lfactor], t, sigma_[l.lfactor].map[l.local]);
          if (src < 0) return false;
          if (sigma_[l.lfactor].sign[l.local] > 0)
            A2.col(c) = A.col(src);
          else
            A2.col(c) = -A.col(src);
        }
      }
      a2_.push_back(std::move(A2));
    }
    // Fixed rows must already agree.
    for (std::size_t t = 0; t < p_.a.size(); ++t)
      for (Index r : fixedRows_[t])
        for (Index c = 0; c < p_.b[t].cols(); ++c)
          if (p_.b[t](r, c) != a2_[t](r, c)) return false;
    tau_.clear();
    for (int j = 0; j < p_.numHeavyFactors; ++j) {
      ColState st;
      st.map.assign(p_.leftLen[j], -1);
      st.sign.assign(p_.leftLen[j], 1);
      st.used.assign(p_.leftLen[j], false);
      tau_.push_back(std::move(st));
    }
    if (!assignRows(0, 0)) return false;
    TwoSidedWitness w;
    for (int j = 0; j < p_.numHeavyFactors; ++j) {
      SignedPerm l, r;
      l.map = tau_[j].map;
      l.signs = tau_[j].sign;
      r.map = sigma_[j].map;
      r.signs = sigma_[j].sign;
      w.left.push_back(std::move(l));
      w.right.push_back(std::move(r));
    }
    result_ = std::move(w);
    return true;
  }

  bool rowCandidateOk(int j, Index iTo, Index iFrom, int s) {
    for (const Occurrence& o : rowOcc_[j]) {
      if (o.local != iTo) continue;
      Index rFrom = coordOfLocal(rowOcc_[j], o.factor, iFrom);
      if (rFrom < 0) return false;
      const Mat<K>& A2 = a2_[o.factor];
      const Mat<K>& B = p_.b[o.factor];
      for (Index c = 0; c < B.cols(); ++c) {
        K expect = s > 0 ? A2(rFrom, c) : K(-A2(rFrom, c));
        if (B(o.coord, c) != expect) return false;
      }
    }
    return true;
  }

  bool assignRows(int j, Index iTo) {
    if (j == p_.numHeavyFactors) return true;
    if (iTo == p_.leftLen[j]) return assignRows(j + 1, 0);
    for (Index iFrom = 0; iFrom < p_.leftLen[j]; ++iFrom) {
      if (tau_[j].used[iFrom]) continue;
      for (int s : {1, -1}) {
        if (++nodes_ > nodeCap_) return false;
        if (!rowCandidateOk(j, iTo, iFrom, s)) continue;
        tau_[j].map[iTo] = iFrom;
        tau_[j].sign[iTo] = s;
        tau_[j].used[iFrom] = true;
        if (assignRows(j, iTo + 1)) return true;
        tau_[j].used[iFrom] = false;
      }
    }
    return false;
  }

  const WitnessProblem<K>& p_;
  std::uint64_t nodeCap_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Occurrence>> colOcc_, rowOcc_;
  std::vector<std::vector<Index>> fixedRows_;
  std::vector<ColState> sigma_, tau_;
  std::vector<Mat<K>> a2_;
  TwoSidedWitness result_;
};

}  // namespace detail

template <typename K>
std::optional<TwoSidedWitness> solveWitness(const WitnessProblem<K>& p,
                                            std::uint64_t nodeCap = 200000) {
  detail::WitnessSolver<K> solver(p, nodeCap);
  return solver.solve();
}

/// Checks B = U A V for an explicit witness; used to certify search results.
template <typename K>
bool witnessVerifies(const WitnessProblem<K>& p, const TwoSidedWitness& w) {
  for (std::size_t t = 0; t < p.a.size(); ++t) {
    const Mat<K>& A = p.a[t];
    const Mat<K>& B = p.b[t];
    auto colOf = [&](int j, Index local) {
      for (Index c = 0; c < static_cast<Index>(p.colLink[t].size()); ++c)
        if (p.colLink[t][c].lfactor == j && p.colLink[t][c].local == local) return c;
      return Index(-1);
    };
    auto rowOf = [&](int j, Index local) {
      for (Index r = 0; r < static_cast<Index>(p.rowLink[t].size()); ++r)
        if (p.rowLink[t][r].lfactor == j && p.rowLink[t][r].local == local) return r;
      return Index(-1);
    };
    for (Index r = 0; r < B.rows(); ++r) {
      const CoordLink& rl = p.rowLink[t][r];
      Index ra = r;
      int rs = 1;
      if (rl.lfactor >= 0) {
        ra = rowOf(rl.lfactor, w.left[rl.lfactor].map[rl.local]);
        rs = w.left[rl.lfactor].signs[rl.local];
        if (ra < 0) return false;
      }
      for (Index c = 0; c < B.cols(); ++c) {
        const CoordLink& cl = p.colLink[t][c];
        Index ca = c;
        int cs = 1;
        if (cl.lfactor >= 0) {
          ca = colOf(cl.lfactor, w.right[cl.lfactor].map[cl.local]);
          cs = w.right[cl.lfactor].signs[cl.local];
          if (ca < 0) return false;
        }
        K expect = A(ra, ca);
        if (rs * cs < 0) expect = -expect;
        if (B(r, c) != expect) return false;
      }
    }
  }
  return true;
}

}  // namespace cosets
