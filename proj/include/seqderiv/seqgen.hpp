#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace seqderiv {

using Index = std::int64_t;

/// 1/(p + q n)
struct Harmonic {
  double p = 0.0;
  double q = 1.0;
};

/// 1/P(n) with P increasing and P(n)/n^m -> a. `coefficients` (ascending
/// powers, integer exponents) is used when non-empty; otherwise P(n) = a n^m.
struct Polynomial {
  double m = 1.0;
  double a = 1.0;
  std::vector<double> coefficients;
};

/// a^(-n)
struct Exponential {
  double a = 2.0;
};

/// Terms listed explicitly; term(offset + i) = values[i].
struct Explicit {
  std::vector<double> values;
};

/// Null sequence n -> term(n), n >= offset, positive and strictly decreasing.
/// Subsequences are represented by composing an index map onto a parent.
class DecaySequence {
 public:
  using Family = std::variant<Harmonic, Polynomial, Exponential, Explicit>;
  using IndexMap = std::function<Index(Index)>;

  DecaySequence(Family family, Index offset = 1);

  static DecaySequence harmonic(double p, double q, Index offset = 1);
  static DecaySequence power(double m, double a, Index offset = 1);
  static DecaySequence polynomial(std::vector<double> coefficients, Index offset = 1);
  static DecaySequence exponential(double a, Index offset = 1);
  static DecaySequence list(std::vector<double> values, Index offset = 1);

  /// Parses "harmonic:p,q", "poly:m,a", "exp:a", "list:v1,v2,...".
  static DecaySequence parse(const std::string& spec);

  const Family& family() const noexcept { return family_; }
  Index offset() const noexcept { return offset_; }
  bool is_subsequence() const noexcept { return static_cast<bool>(map_); }
  /// Last valid index, or -1 when unbounded.
  Index last_index() const noexcept;

  /// n-th term. Throws ErrorKind::index for n < offset (or past the end of an
  /// explicit list) and ErrorKind::domain when the formula yields a
  /// non-positive or unrepresentable value.
  double term(Index n) const;

  /// log(1/term(n)) computed without forming term(n), so exponential
  /// sequences can be inspected far past the double underflow point.
  double log_inverse_term(Index n) const;

  /// Canonical spec string (round-trips through `parse` for plain families).
  std::string spec() const;

  /// Checks positivity and strict decrease on the prefix up to `horizon`
  /// (or the list end) and that term(horizon) < eps. Returns an empty string
  /// on success, otherwise a description of the first violation.
  std::string verify(Index horizon = 10'000, double eps = 1e-3) const;

  friend DecaySequence subsequence(const DecaySequence& seq, IndexMap index_map,
                                   Index check_horizon);

 private:
  double base_term(Index n) const;
  double base_log_inverse(Index n) const;
  Index base_index(Index n) const;

  Family family_;
  Index offset_ = 1;
  // Composition of index maps applied before the family formula; empty for
  // plain sequences.
  IndexMap map_;
  std::string map_label_;
};

/// n -> term(seq, index_map(n)). The map must be strictly increasing with
/// image in seq's domain; this is checked on the prefix [offset, horizon]
/// and a violation throws ErrorKind::invalid_map.
DecaySequence subsequence(const DecaySequence& seq, DecaySequence::IndexMap index_map,
                          Index check_horizon = 10'000);

struct RateClass {
  enum class Kind { polynomial, exponential, unknown };
  Kind kind = Kind::unknown;
  double m = 0.0;  // polynomial exponent
  double a = 0.0;  // polynomial: n^m term(n) -> 1/a; exponential: base
  double poly_residual = 0.0;
  double exp_residual = 0.0;
};

inline constexpr double kRateFitTolerance = 1e-2;

/// Least-squares fits of log(1/term(n)) against log n and against n over
/// n in [N/4, N]; a family is accepted when its relative residual
/// sqrt(SSE/SST) is at most `fit_tol` and the other family's is not.
RateClass rate_classify(const DecaySequence& seq, Index N, double fit_tol = kRateFitTolerance);

std::string to_string(const RateClass& rc);

}  // namespace seqderiv
