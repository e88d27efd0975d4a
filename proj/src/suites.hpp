#pragma once

// Seeded verification suites.  Each suite draws deterministic samples,
// checks one algebraic law with exact arithmetic (the spherical suite is the
// single numeric exception) and emits a machine-readable report with
// per-trial seeds and minimized counterexamples on failure.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "cosets/matrix.hpp"

namespace cosets::suites {

struct SuiteConfig {
  std::string suite;
  int trials = 20;
  std::uint64_t seed = 1;
  Index maxSupport = 3;  // cap on working sizes of sampled representatives
  Index n = 10;          // truncation dimension for tensor suites
  Index d = 2;           // tensor degree for tensor suites

  void validate() const;
};

std::vector<std::string> suiteNames();

/// Runs one suite; throws cosets::Error on configuration problems.
nlohmann::json runSuite(const SuiteConfig& cfg);

}  // namespace cosets::suites
