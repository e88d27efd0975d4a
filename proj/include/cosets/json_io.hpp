#pragma once

// JSON wire formats.  Scalars travel as exact strings ("p/q", "a/b+c/d*i"),
// matrices as {"field","rows","cols","entries"}, cosets with their pair,
// indices, representatives and segment lengths.

#include <json.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cosets/coset_ops.hpp"
#include "cosets/relation.hpp"

namespace cosets {

using Json = nlohmann::json;

template <typename K>
Json matrixToJson(const Mat<K>& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(FieldTraits<K>::str(m(i, j)));
    entries.push_back(std::move(row));
  }
  return Json{{"field", fieldName(FieldTraits<K>::tag)},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", std::move(entries)}};
}

template <typename K>
Mat<K> matrixFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw Error("matrix JSON needs rows, cols, entries");
  if (j.contains("field") && fieldFromName(j.at("field").get<std::string>()) != FieldTraits<K>::tag)
    throw Error("matrix field tag mismatch");
  Index rows = j.at("rows").get<Index>(), cols = j.at("cols").get<Index>();
  const Json& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Index>(entries.size()) != rows)
    throw Error("matrix entries shape mismatch");
  Mat<K> m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = entries.at(i);
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw Error("matrix entries shape mismatch");
    for (Index c = 0; c < cols; ++c) {
      const Json& cell = row.at(c);
      if (cell.is_number_integer())
        m(i, c) = K(cell.get<long>());
      else
        m(i, c) = FieldTraits<K>::parse(cell.get<std::string>());
    }
  }
  return m;
}

inline Field fieldOfMatrixJson(const Json& j) {
  if (j.contains("field")) return fieldFromName(j.at("field").get<std::string>());
  return Field::Q;
}

inline Json groupDescriptorToJson(const GroupDescriptor& g) {
  Json j{{"kind", groupKindName(g.kind)}};
  if (g.isProduct()) {
    Json fs = Json::array();
    for (const auto& f : g.factors) fs.push_back(groupDescriptorToJson(f));
    j["factors"] = std::move(fs);
  }
  return j;
}

inline GroupDescriptor groupDescriptorFromJson(const Json& j) {
  GroupKind kind = groupKindFromName(j.at("kind").get<std::string>());
  if (kind != GroupKind::Product) return GroupDescriptor::simple(kind);
  std::vector<GroupDescriptor> fs;
  for (const Json& f : j.at("factors")) fs.push_back(groupDescriptorFromJson(f));
  return GroupDescriptor::product(std::move(fs));
}

inline Json embSlotToJson(const EmbSlot& s) {
  if (s.identityBlock) {
    if (s.infinite) return Json{{"identity", "inf"}};
    return Json{{"identity", s.size}};
  }
  return Json{{"hom", trivialHomName(s.tag)}, {"source", s.sourceFactor}};
}

inline EmbSlot embSlotFromJson(const Json& j) {
  if (j.contains("identity")) {
    const Json& v = j.at("identity");
    if (v.is_string()) {
      if (v.get<std::string>() != "inf") throw Error("bad identity block size");
      return EmbSlot::infiniteIdentity();
    }
    return EmbSlot::identityOf(v.get<Index>());
  }
  return EmbSlot::hom(trivialHomFromName(j.at("hom").get<std::string>()),
                      j.at("source").get<std::size_t>());
}

inline Json embeddingToJson(const EmbeddingSpec& e) {
  Json slots = Json::array();
  for (const auto& list : e.slots) {
    Json l = Json::array();
    for (const auto& s : list) l.push_back(embSlotToJson(s));
    slots.push_back(std::move(l));
  }
  return Json{{"source", groupDescriptorToJson(e.source)},
              {"target", groupDescriptorToJson(e.target)},
              {"slots", std::move(slots)}};
}

inline EmbeddingSpec embeddingFromJson(const Json& j) {
  EmbeddingSpec e;
  e.source = groupDescriptorFromJson(j.at("source"));
  e.target = groupDescriptorFromJson(j.at("target"));
  for (const Json& list : j.at("slots")) {
    std::vector<EmbSlot> l;
    for (const Json& s : list) l.push_back(embSlotFromJson(s));
    e.slots.push_back(std::move(l));
  }
  e.validate();
  return e;
}

inline Json pairToJson(const PairDescriptor& p) {
  return Json{{"G", groupDescriptorToJson(p.G)},
              {"L", groupDescriptorToJson(p.L)},
              {"embedding", embeddingToJson(p.embedding)}};
}

inline PairDescriptor pairFromJson(const Json& j) {
  PairDescriptor p;
  p.G = groupDescriptorFromJson(j.at("G"));
  p.L = groupDescriptorFromJson(j.at("L"));
  p.embedding = embeddingFromJson(j.at("embedding"));
  p.validate();
  return p;
}

inline Field fieldOfPair(const PairDescriptor& p) { return fieldOfKind(p.G.factor(0).kind); }

template <typename K>
Json cosetToJson(const DoubleCoset<K>& g) {
  Json reps = Json::array();
  Json segs = Json::array();
  for (std::size_t t = 0; t < g.numFactors(); ++t) {
    reps.push_back(matrixToJson(g.factor(t).mat));
    segs.push_back(g.factor(t).segLens);
  }
  return Json{{"pair", pairToJson(*g.pair())},
              {"alpha", g.alpha()},
              {"beta", g.beta()},
              {"rep", std::move(reps)},
              {"segments", std::move(segs)}};
}

template <typename K>
DoubleCoset<K> cosetFromJson(const Json& j) {
  auto pair = std::make_shared<const PairDescriptor>(pairFromJson(j.at("pair")));
  MultiIndex alpha = j.at("alpha").get<MultiIndex>();
  MultiIndex beta = j.at("beta").get<MultiIndex>();
  const Json& reps = j.at("rep");
  std::vector<FactorRep<K>> factors;
  for (std::size_t t = 0; t < reps.size(); ++t) {
    FactorRep<K> fr;
    fr.mat = matrixFromJson<K>(reps.at(t));
    if (j.contains("segments")) {
      fr.segLens = j.at("segments").at(t).get<std::vector<Index>>();
    } else if (pair->embedding.slots[t].size() == 1) {
      fr.segLens = {fr.mat.rows()};
    } else {
      throw Error("multi-slot factors need explicit segments");
    }
    factors.push_back(std::move(fr));
  }
  return DoubleCoset<K>(std::move(pair), std::move(beta), std::move(alpha), std::move(factors));
}

template <typename K>
Json relationToJson(const LinearRelation<K>& r) {
  return Json{{"dom", r.domDim()}, {"cod", r.codDim()}, {"basis", matrixToJson(r.graph().basis())}};
}

inline Json signedPermToJson(const SignedPerm& p) {
  return Json{{"perm", p.map}, {"signs", p.signs}};
}

inline Json witnessToJson(const TwoSidedWitness& w) {
  Json left = Json::array(), right = Json::array();
  for (const auto& p : w.left) left.push_back(signedPermToJson(p));
  for (const auto& p : w.right) right.push_back(signedPermToJson(p));
  return Json{{"left", std::move(left)}, {"right", std::move(right)}};
}

/// Parses "2", "-5/3", "1/2+1/3*i" or "inf" into a projective point.
template <typename K>
ProjectivePoint<K> lambdaFromString(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "oo") return ProjectivePoint<K>::infinity();
  return ProjectivePoint<K>::finite(FieldTraits<K>::parse(s));
}

}  // namespace cosets
