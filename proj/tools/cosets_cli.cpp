// Command-line surface: products, equality, involution, characteristic
// functions and invariants of double cosets from JSON inputs; seeded
// verification suites; spherical function evaluation.
//
// Exit codes: 0 success / all trials pass, 1 property violation, 2 input or
// configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cli_commands.hpp"

namespace {

nlohmann::json readJsonInput(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw cosets::Error("cannot open input: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return nlohmann::json::parse(text);
}

int emit(const cosets::cli::CommandResult& r) {
  std::cout << r.output.dump(2) << "\n";
  return r.exitCode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double coset calculus"};
  app.require_subcommand(1);

  // coset mul|eq|inv|chi|invariants
  auto* coset = app.add_subcommand("coset", "operations on double cosets");
  coset->require_subcommand(1);
  std::string fileA, fileB, lambda = "2";

  auto* mul = coset->add_subcommand("mul", "compose two cosets");
  mul->add_option("a", fileA, "left factor (JSON file or -)")->required();
  mul->add_option("b", fileB, "right factor")->required();

  auto* eq = coset->add_subcommand("eq", "three-tier equality test");
  eq->add_option("a", fileA)->required();
  eq->add_option("b", fileB)->required();

  auto* inv = coset->add_subcommand("inv", "involution");
  inv->add_option("a", fileA)->required();

  auto* chi = coset->add_subcommand("chi", "characteristic function at lambda");
  chi->add_option("a", fileA)->required();
  chi->add_option("--lambda", lambda, "rational value or inf");

  auto* invs = coset->add_subcommand("invariants", "corner and chi samples");
  invs->add_option("a", fileA)->required();

  // verify <suite>
  cosets::suites::SuiteConfig cfg;
  auto* verify = app.add_subcommand("verify", "run a seeded verification suite");
  verify->add_option("suite", cfg.suite, "one of the documented suites")->required();
  int trials = 0;
  std::uint64_t seed = 0;
  long long nOpt = 0, dOpt = -1, supOpt = -1;
  verify->add_option("--trials", trials, "number of trials");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--n", nOpt, "truncation dimension for tensor suites");
  verify->add_option("--d", dOpt, "tensor degree for tensor suites");
  verify->add_option("--max-support", supOpt, "cap on sampled working sizes");

  // spherical
  std::vector<double> sParams;
  double aParam = 0.0;
  int sigmaParam = 0;
  std::string matrixFile = "-";
  auto* sph = app.add_subcommand("spherical", "evaluate the closed-form spherical function");
  sph->add_option("--s", sParams, "spectral parameters")->delimiter(',');
  sph->add_option("--a", aParam, "determinant exponent");
  sph->add_option("--sigma", sigmaParam, "sign character, 0 or 1");
  sph->add_option("matrix", matrixFile, "matrix JSON file or - for stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mul->parsed()) return emit(cosets::cli::cosetMul(readJsonInput(fileA), readJsonInput(fileB)));
    if (eq->parsed()) return emit(cosets::cli::cosetEqCmd(readJsonInput(fileA), readJsonInput(fileB)));
    if (inv->parsed()) return emit(cosets::cli::cosetInv(readJsonInput(fileA)));
    if (chi->parsed()) return emit(cosets::cli::cosetChi(readJsonInput(fileA), lambda));
    if (invs->parsed()) return emit(cosets::cli::cosetInvariantsCmd(readJsonInput(fileA)));
    if (verify->parsed()) {
      if (trials > 0) cfg.trials = trials;
      if (seed != 0) cfg.seed = seed;
      if (nOpt > 0) cfg.n = static_cast<cosets::Index>(nOpt);
      if (dOpt >= 0) cfg.d = static_cast<cosets::Index>(dOpt);
      if (supOpt >= 0) cfg.maxSupport = static_cast<cosets::Index>(supOpt);
      if (cfg.suite == "theta_limit" && nOpt <= 0) cfg.n = 12;
      return emit(cosets::cli::verify(cfg));
    }
    if (sph->parsed())
      return emit(cosets::cli::spherical(readJsonInput(matrixFile), sParams, aParam, sigmaParam));
  } catch (const cosets::Error& e) {
    std::cout << nlohmann::json{{"error", e.what()}}.dump(2) << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cout << nlohmann::json{{"error", std::string("bad input: ") + e.what()}}.dump(2) << "\n";
    return 2;
  }
  return 2;
}
