#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace seqderiv {

struct VerifyConfig {
  std::uint64_t seed = 1;
  std::int64_t budget = 100'000;
  double cluster_tol = 1e-3;
  double target_tol = 1e-9;
  // Parameters of the rate suites; defaults depend on the suite.
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> m;
  std::optional<double> target;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Suite names in the order "all" runs them.
const std::vector<std::string>& suite_names();

/// Canonical suite name for a name or alias; "all" is returned unchanged.
/// Unknown names throw ErrorKind::param.
std::string canonical_suite(const std::string& name);

/// Runs one suite, or every suite for "all". Output depends only on the
/// configuration.
std::vector<SuiteReport> run_verification(const std::string& suite, const VerifyConfig& config);

void to_json(nlohmann::json& j, const CheckResult& c);
void to_json(nlohmann::json& j, const SuiteReport& s);

}  // namespace seqderiv
