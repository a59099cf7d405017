#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace seqderiv {

inline constexpr const char* kSchema = "seqderiv/1";

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::int64_t budget = 100'000;
  double cluster_tol = 1e-3;
  double target_tol = 1e-9;
  double infinity_threshold = 1e12;
  OutputFormat format = OutputFormat::json;
  std::string fn;
  std::optional<double> x;
  std::string h_seq;
  std::string k_seq;
  std::int64_t n = 100;
  std::string side = "both";
  std::optional<double> target;
  std::string suite = "all";
  std::optional<double> a, b, m;
  double R = 1.0;
  double L = 0.0;
  std::int64_t i_max = 50;
  std::int64_t j_max = 50;
  std::int64_t t_min = -20;
  std::int64_t t_max = 20;
};

void to_json(nlohmann::json& j, const RunConfig& c);

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 verification failure or a structured error record, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqderiv
