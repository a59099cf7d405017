#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqderiv/extreal.hpp"
#include "seqderiv/seqgen.hpp"

namespace seqderiv {

/// Sample set {0} ∪ {h_n} ∪ {-k_n} of a discretely defined function.
struct DiscreteSamples {
  DecaySequence h;
  DecaySequence k;
  Index h_last;  // last index whose term is a normal double
  Index k_last;

  DiscreteSamples(DecaySequence h_seq, DecaySequence k_seq);

  /// Index n with h_n == x exactly, if any.
  std::optional<Index> right_index(double x) const;
  /// Index n with -k_n == x exactly, if any.
  std::optional<Index> left_index(double x) const;
  bool contains(double x) const;
};

struct Domain {
  enum class Kind { interval, discrete };
  Kind kind = Kind::interval;
  double lo = 0.0;  // interval bounds; IEEE infinities for unbounded
  double hi = 0.0;
  std::shared_ptr<const DiscreteSamples> samples;

  static Domain interval(double lo, double hi);
  static Domain real_line();
  static Domain discrete(DecaySequence h, DecaySequence k);

  bool contains(double x) const;
  std::string describe() const;
};

/// An evaluable function of the gallery. Immutable; evaluation is pure.
class GalleryFunction {
 public:
  using Eval = std::function<double(double)>;

  GalleryFunction(std::string name, std::string spec, Domain domain, Eval eval,
                  nlohmann::json params, bool continuous);

  const std::string& name() const noexcept { return name_; }
  /// Registry spec string that rebuilds this function via `make_function`.
  const std::string& spec() const noexcept { return spec_; }
  const Domain& domain() const noexcept { return domain_; }
  const nlohmann::json& params() const noexcept { return params_; }
  /// Continuous on its (interval) domain.
  bool continuous() const noexcept { return continuous_; }

  bool in_domain(double x) const { return domain_.contains(x); }
  /// Throws ErrorKind::domain outside the declared domain.
  double operator()(double x) const;

 private:
  std::string name_;
  std::string spec_;
  Domain domain_;
  Eval eval_;
  nlohmann::json params_;
  bool continuous_;
};

// ---------------------------------------------------------------------------
// Weierstrass function  W(x) = sum_n a^n cos(b^n pi x)

/// Number of the last summed term: smallest N with a^(N+1)/(1-a) <= tol.
int weierstrass_last_term(double a, double tol);

/// Partial sum through `weierstrass_last_term(a, tol)` terms. The phase b^n x
/// is reduced modulo 2 exactly in integer arithmetic, and the series is
/// accumulated with Neumaier compensation. Requires 0 < a < 1 and b odd
/// positive; otherwise ErrorKind::param.
double weierstrass(double a, std::int64_t b, double x, double tol = 1e-16);

/// Whether a b > 1 + 3 pi / 2 (reported, not enforced).
bool weierstrass_condition(double a, std::int64_t b);

/// cos(pi r), exact at multiples of 1/2.
double cos_pi(double r);

// ---------------------------------------------------------------------------
// Closed-form constructions

/// The interval-valued secant construction on [0, 1]. For |a| <= |b|:
///   b x sin(1/x) if b sin(1/x) >= a, else a x.
/// For |b| < |a|:
///   a x sin(1/x) if b sin(1/x) >= a, else b x.
/// f(0) = 0. Requires a < b (ErrorKind::param) and x in [0, 1]
/// (ErrorKind::domain).
double sine_envelope(double a, double b, double x);

/// sqrt(x) sin(1/x) on [0, 1], 0 at 0.
double sqrt_sin(double x);

/// f_{a,b}(x) for x >= 0 and f_{-d,-c}(-x) for x < 0, on [-1, 1].
double glued(double a, double b, double c, double d, double x);

/// A double v near slope * x with fl(v / x) == slope whenever such a value
/// exists within a few ulps; lets constructions state exact quotients.
double slope_exact_value(double slope, double x);

// ---------------------------------------------------------------------------
// Gallery constructors

GalleryFunction make_weierstrass(double a = 0.5, std::int64_t b = 13, double tol = 1e-16);
GalleryFunction make_sine_envelope(double a, double b);
GalleryFunction make_sqrt_sin();
GalleryFunction make_glued(double a, double b, double c, double d);
GalleryFunction make_abs();
GalleryFunction make_square();
GalleryFunction make_cube();
GalleryFunction make_sin();
GalleryFunction make_sqrt();

/// f(0)=0; f(h_n) = R h_n, f(-k_n) = -L k_n on {0} ∪ {h_n} ∪ {-k_n}. Newton
/// quotients along the sample sequences are exactly R and L.
GalleryFunction make_two_slope(double R, double L, DecaySequence h, DecaySequence k);

/// Location of x in the dense-slope partition: x lies in block n, i.e.
/// (1/(n+1), 1/n], and in cell k of its n+1 equal subintervals.
struct DenseSlopeCell {
  std::int64_t block;
  std::int64_t cell;
  bool is_slope_cell() const noexcept { return cell <= block; }
};
DenseSlopeCell dense_slope_cell(double x);

/// Piecewise construction on [0, 1]: in slope cell k of block n,
/// f(x) = a_k x (slopes cycled when the list is shorter than n); in the last
/// cell of each block f(x) = sqrt(x); f(0) = 0. `target` is recorded as the
/// set the slopes are meant to be dense in.
GalleryFunction make_dense_slope(const ClosedExtSet& target, std::vector<double> slopes);

/// g(t) = f(t + x) - f(x), the normalization to the origin.
GalleryFunction shifted(const GalleryFunction& f, double x);

/// Builds a function from a registry spec such as "weierstrass:a=0.5,b=13",
/// "sine_envelope:a=-1,b=2", "two_slope:R=1,L=0,h=exp:2,k=exp:4", "abs".
/// Unknown names or malformed parameters throw ErrorKind::param.
GalleryFunction make_function(const std::string& spec);

struct GalleryEntry {
  std::string name;
  std::string example_spec;
  std::string description;
  bool continuous;
};
const std::vector<GalleryEntry>& gallery_catalog();

}  // namespace seqderiv
