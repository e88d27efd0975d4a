#pragma once

// Command implementations behind the CLI, kept separate so tests can drive
// them directly.  Exit codes: 0 success, 1 property violation, 2 input error.

#include <json.hpp>

#include <string>
#include <vector>

#include "suites.hpp"

namespace cosets::cli {

struct CommandResult {
  int exitCode = 0;
  nlohmann::json output;
};

CommandResult cosetMul(const nlohmann::json& a, const nlohmann::json& b);
CommandResult cosetEqCmd(const nlohmann::json& a, const nlohmann::json& b);
CommandResult cosetInv(const nlohmann::json& a);
CommandResult cosetChi(const nlohmann::json& a, const std::string& lambda);
CommandResult cosetInvariantsCmd(const nlohmann::json& a);
CommandResult verify(const suites::SuiteConfig& cfg);
CommandResult spherical(const nlohmann::json& matrix, const std::vector<double>& s, double a,
                        int sigma);

}  // namespace cosets::cli
