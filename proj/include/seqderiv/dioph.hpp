#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqderiv/extended.hpp"

namespace seqderiv {

enum class Precision { standard, extended };

/// Reads SEQDERIV_PRECISION ("double" or "extended"); extended when unset.
/// An unrecognized value throws ErrorKind::param.
Precision working_precision();
std::string to_string(Precision p);

/// log(a) / log(b) for a, b > 1, in the requested precision.
DoubleDouble log_ratio(double a, double b, Precision precision = working_precision());

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

struct ContinuedFraction {
  std::vector<std::int64_t> partial_quotients;  // a0; a1, a2, ...
  std::vector<Convergent> convergents;          // p_k / q_k after each quotient
  bool terminated = false;                      // exact rational input
};

/// Partial quotients of alpha > 0 (ErrorKind::param otherwise), at most
/// `depth` of them. Expansion stops early when it terminates or when q_k^2
/// exceeds the resolution of the input (2^51 for double inputs and
/// double-doubles with a zero low word, 2^102 otherwise), so every returned
/// quotient is trustworthy.
ContinuedFraction continued_fraction(const DoubleDouble& alpha, int depth);
ContinuedFraction continued_fraction(double alpha, int depth);

struct ApproxWitness {
  std::int64_t i = 0;
  std::int64_t j = 0;
  double achieved = 0.0;  // i alpha - j
  double error = 0.0;     // |i alpha - j - t|
  double alpha = 0.0;
  double t = 0.0;
};

void to_json(nlohmann::json& j, const ApproxWitness& w);

/// Smallest i in [1, i_bound] (with j = nearest integer >= 0 to i alpha - t)
/// such that |i alpha - j - t| < eps, or nullopt when none exists. Indices
/// are examined in increasing order, so the witness has minimal i. For
/// rational alpha = p/q the search stops one period q past the point where
/// j leaves 0.
std::optional<ApproxWitness> approx_target(const DoubleDouble& alpha, double t, double eps,
                                           std::int64_t i_bound = 1'000'000);
std::optional<ApproxWitness> approx_target(double alpha, double t, double eps,
                                           std::int64_t i_bound = 1'000'000);

struct RationalRelation {
  bool found = false;
  std::int64_t p = 0;  // log a / log b = p / q, i.e. a^q = b^p
  std::int64_t q = 0;
  std::int64_t bound = 0;
  bool exact = false;  // integer search (true) or convergent test (false)
};

std::string to_string(const RationalRelation& r);

/// Looks for a^q = b^p with p, q <= exp_bound. Integer a, b are searched
/// exactly with big-integer powers; other inputs fall back to a convergent
/// test on log a / log b that can only report relations up to working
/// precision. Never claims irrationality: `found == false` means no relation
/// within the bound.
RationalRelation rational_check(double a, double b, std::int64_t exp_bound = 64,
                                Precision precision = working_precision());

}  // namespace seqderiv
