#pragma once

#include <compare>
#include <string>
#include <vector>

#include <json.hpp>

namespace seqderiv {

/// A value on the extended real line. Infinities are explicit kinds rather
/// than IEEE infinities so that they survive serialization unchanged.
class ExtReal {
 public:
  enum class Kind { neg_inf, finite, pos_inf };

  constexpr ExtReal() = default;

  /// Throws ErrorKind::param on NaN. IEEE infinities are mapped to the
  /// corresponding infinite kind.
  static ExtReal from_double(double v);
  static constexpr ExtReal pos_inf() { return ExtReal(Kind::pos_inf, 0.0); }
  static constexpr ExtReal neg_inf() { return ExtReal(Kind::neg_inf, 0.0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  /// Finite value; throws ErrorKind::domain for infinities.
  double value() const;
  /// IEEE view: ±inf for the infinite kinds.
  double to_double() const noexcept;

  std::strong_ordering operator<=>(const ExtReal& other) const noexcept;
  bool operator==(const ExtReal& other) const noexcept {
    return (*this <=> other) == std::strong_ordering::equal;
  }

 private:
  constexpr ExtReal(Kind k, double v) : kind_(k), value_(v) {}

  Kind kind_ = Kind::finite;
  double value_ = 0.0;
};

inline ExtReal ext(double v) { return ExtReal::from_double(v); }

std::string to_string(const ExtReal& x);

/// Arctangent chart onto [-pi/2, pi/2]; the compactified metric on the
/// extended reals is |chart(x) - chart(y)|.
double chart(const ExtReal& x) noexcept;
/// Inverse of `chart`; the endpoints map to the infinities.
ExtReal unchart(double c);
double chart_distance(const ExtReal& x, const ExtReal& y) noexcept;

struct ExtInterval {
  ExtReal lo;
  ExtReal hi;
  bool operator==(const ExtInterval&) const = default;
};

/// Finite union of closed intervals and isolated points of the extended
/// reals. Instances built through `normalize` (or the factories) are in
/// canonical form: intervals sorted, pairwise disjoint, lo < hi; points sorted,
/// distinct, and not contained in any interval.
class ClosedExtSet {
 public:
  ClosedExtSet() = default;

  static ClosedExtSet interval(ExtReal lo, ExtReal hi);
  static ClosedExtSet point(ExtReal p);
  static ClosedExtSet from_points(std::vector<ExtReal> points);

  const std::vector<ExtInterval>& intervals() const noexcept { return intervals_; }
  const std::vector<ExtReal>& points() const noexcept { return points_; }

  bool empty() const noexcept { return intervals_.empty() && points_.empty(); }
  bool contains(const ExtReal& x) const noexcept;
  /// Throws ErrorKind::empty_set when empty.
  ExtReal min() const;
  ExtReal max() const;

  bool operator==(const ClosedExtSet&) const = default;

  friend ClosedExtSet normalize(std::vector<ExtInterval> intervals,
                                std::vector<ExtReal> points);

 private:
  std::vector<ExtInterval> intervals_;
  std::vector<ExtReal> points_;
};

/// Canonicalizes a raw union. Intervals with lo == hi become points; lo > hi
/// throws ErrorKind::invalid_set.
ClosedExtSet normalize(std::vector<ExtInterval> intervals,
                       std::vector<ExtReal> points);
ClosedExtSet normalize(const ClosedExtSet& raw);

/// Hausdorff distance in the chart metric. Both operands must be non-empty.
double hausdorff(const ClosedExtSet& a, const ClosedExtSet& b);

/// sup over a in A of the chart distance from a to B; zero iff A is inside B.
double excess(const ClosedExtSet& a, const ClosedExtSet& b);

/// Distance from a point to a set in the chart metric.
double chart_distance(const ExtReal& x, const ClosedExtSet& s);

/// [min A, max A], or a single point when min == max.
ClosedExtSet convex_hull(const ClosedExtSet& a);

std::string to_string(const ClosedExtSet& s);

// JSON: numbers for finite values, "+inf" / "-inf" tokens for infinities.
void to_json(nlohmann::json& j, const ExtReal& x);
void from_json(const nlohmann::json& j, ExtReal& x);
void to_json(nlohmann::json& j, const ClosedExtSet& s);
void from_json(const nlohmann::json& j, ClosedExtSet& s);

/// Shortest round-trip decimal form with '.' separator; "+inf"/"-inf" for
/// infinities. Used by every CSV writer.
std::string format_number(double v);
std::string format_number(const ExtReal& x);

}  // namespace seqderiv
