#include "cli_commands.hpp"

#include "cosets/json_io.hpp"
#include "cosets/spherical.hpp"

namespace cosets::cli {

using Json = nlohmann::json;

namespace {

Field fieldOfCosetJson(const Json& j) {
  return fieldOfPair(pairFromJson(j.at("pair")));
}

template <typename F>
CommandResult guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return {2, Json{{"error", e.what()}}};
  } catch (const Json::exception& e) {
    return {2, Json{{"error", std::string("bad input: ") + e.what()}}};
  }
}

template <typename F>
CommandResult dispatchField(Field f, F&& fn) {
  if (f == Field::Q) return fn(Rational());
  return fn(GaussRational());
}

}  // namespace

CommandResult cosetMul(const Json& a, const Json& b) {
  return guarded([&] {
    return dispatchField(fieldOfCosetJson(a), [&](auto marker) -> CommandResult {
      using K = decltype(marker);
      auto g = cosetFromJson<K>(a);
      auto h = cosetFromJson<K>(b);
      return {0, cosetToJson(composeCosets(g, h))};
    });
  });
}

CommandResult cosetEqCmd(const Json& a, const Json& b) {
  return guarded([&] {
    return dispatchField(fieldOfCosetJson(a), [&](auto marker) -> CommandResult {
      using K = decltype(marker);
      auto res = cosetEq(cosetFromJson<K>(a), cosetFromJson<K>(b));
      Json out{{"verdict", verdictName(res.verdict)}};
      if (res.witness) out["witness"] = witnessToJson(*res.witness);
      return {0, out};
    });
  });
}

CommandResult cosetInv(const Json& a) {
  return guarded([&] {
    return dispatchField(fieldOfCosetJson(a), [&](auto marker) -> CommandResult {
      using K = decltype(marker);
      return {0, cosetToJson(involution(cosetFromJson<K>(a)))};
    });
  });
}

CommandResult cosetChi(const Json& a, const std::string& lambda) {
  return guarded([&] {
    return dispatchField(fieldOfCosetJson(a), [&](auto marker) -> CommandResult {
      using K = decltype(marker);
      auto g = cosetFromJson<K>(a);
      auto pt = lambdaFromString<K>(lambda);
      auto rel = charFunction(g, pt);
      Json out = relationToJson(rel);
      out["lambda"] = lambda;
      out["dim"] = rel.dim();
      out["isotropic"] = chiIsotropicDiagnostic(rel);
      return {0, out};
    });
  });
}

CommandResult cosetInvariantsCmd(const Json& a) {
  return guarded([&] {
    return dispatchField(fieldOfCosetJson(a), [&](auto marker) -> CommandResult {
      using K = decltype(marker);
      auto g = cosetFromJson<K>(a);
      auto inv = cosetInvariants(g);
      Json corners = Json::array(), chi = Json::array();
      auto pts = chiSamplePoints<K>();
      for (std::size_t t = 0; t < inv.corner.size(); ++t) {
        corners.push_back(matrixToJson(inv.corner[t]));
        Json perLambda = Json::array();
        for (std::size_t i = 0; i < inv.chi[t].size(); ++i) {
          std::string label = pts[i].isInfinite()
                                  ? std::string("inf")
                                  : FieldTraits<K>::str(pts[i].num) + "/" +
                                        FieldTraits<K>::str(pts[i].den);
          perLambda.push_back(Json{{"lambda", label},
                                   {"relation", relationToJson(inv.chi[t][i])},
                                   {"isotropic", chiIsotropicDiagnostic(inv.chi[t][i])}});
        }
        chi.push_back(std::move(perLambda));
      }
      return {0, Json{{"corner", std::move(corners)}, {"chi", std::move(chi)}}};
    });
  });
}

CommandResult verify(const suites::SuiteConfig& cfg) {
  try {
    Json report = suites::runSuite(cfg);
    return {report.at("pass").get<bool>() ? 0 : 1, report};
  } catch (const Error& e) {
    return {2, Json{{"error", e.what()}}};
  }
}

CommandResult spherical(const Json& matrix, const std::vector<double>& s, double a, int sigma) {
  return guarded([&]() -> CommandResult {
    if (fieldOfMatrixJson(matrix) != Field::Q)
      throw Error("spherical functions take real (field Q) input");
    MatQ core = matrixFromJson<Rational>(matrix);
    FiniteSupportOperator<Rational> g(GroupKind::GlReal, core);
    SphericalParams params;
    params.s = s;
    params.a = a;
    params.sigma = sigma;
    auto phi = sphericalPhi(params, g);
    return {0, Json{{"re", phi.real()}, {"im", phi.imag()}}};
  });
}

}  // namespace cosets::cli
