#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqderiv/dioph.hpp"
#include "seqderiv/extreal.hpp"
#include "seqderiv/gallery.hpp"
#include "seqderiv/quotient.hpp"

namespace seqderiv {

enum class Side { left, right, both };
std::string to_string(Side s);
Side parse_side(const std::string& s);

enum class Classification { empty, single_point, closed_interval, discrete_with_accumulation, unknown };
std::string to_string(Classification c);

struct SamplingBudget {
  std::int64_t samples = 100'000;
  std::uint64_t seed = 1;
  double cluster_tol = 1e-3;    // chart metric
  double tail_fraction = 0.5;
  double stability_tol = 1e-2;  // chart Hausdorff between full and half budget
  // Step window [h_min, h_max] * max(1, |x|) for interval domains.
  double h_min = 1e-12;
  double h_max = 1e-4;
  bool check_stability = true;
};

struct Evidence {
  std::int64_t samples_requested = 0;
  std::int64_t samples_used = 0;  // quotients actually evaluated
  std::int64_t samples_skipped = 0;
  std::int64_t tail_size = 0;
  std::uint64_t seed = 0;
  double cluster_tol = 0.0;
  double tail_fraction = 0.0;
  double stability_tol = 0.0;
  bool stable = false;
  std::optional<double> stability_distance;
};

/// A cord-limit witness for the exponential-rate case: indices (i, j) with
/// i alpha - j close to log(s) / log(b).
struct ExpWitness {
  double target = 0.0;
  ApproxWitness approx;
  double r = 0.0;      // 1 / (1 + a^i / b^j)
  double limit = 0.0;  // r R + (1 - r) L
};

struct LimitSetEstimate {
  std::string kind;  // "secant", "cord", "trace", "predict_exp"
  ClosedExtSet set;
  Classification classification = Classification::empty;
  std::vector<ExtReal> points;        // the discrete part, for discrete classifications
  std::vector<ExtReal> accumulation;  // known accumulation points (analytic predictions only)
  std::vector<ExpWitness> witnesses;
  Evidence evidence;
};

/// Shape of a canonical set: one point, one interval, only points, or other.
Classification classify(const ClosedExtSet& s);

/// Limit points of the tail of a value sequence. Tail values are sorted in
/// the chart metric. Values occurring at least twice (to 1e-13 in the chart)
/// are atoms; atoms within cluster_tol of each other collapse onto the most
/// frequent one and become points. The remaining values are grouped by
/// single linkage at cluster_tol, and groups separated by less than
/// 3 * cluster_tol chain into one group; a group wider than cluster_tol is an
/// interval, otherwise a point at its median. Anything within cluster_tol of
/// ±pi/2 in the chart is reported as ±inf. Fewer than 100 values throw
/// ErrorKind::insufficient_data.
ClosedExtSet subsequential_limits(const std::vector<ExtReal>& values, double tail_fraction = 0.5,
                                  double cluster_tol = 1e-3);
ClosedExtSet subsequential_limits(const QuotientTrace& t, double tail_fraction = 0.5,
                                  double cluster_tol = 1e-3);

/// Newton quotients at x over log-uniform steps in the budget window plus
/// harmonic probes h = 1/(theta + 2 pi k) on which sin(1/h) is fixed.
/// Discrete domains are sampled at their own points (x must be 0). Entries
/// are ordered by |h| descending and the tail is clustered.
LimitSetEstimate estimate_secant_set(const GalleryFunction& f, double x, Side side,
                                     const SamplingBudget& budget = {});

/// Cord quotients over (h, k): independent log-uniform pairs, power pairs
/// k = h^p and h = k^p for p in {1, 2, 3}, and pairs of harmonic probes.
/// Discrete domains use random index pairs. Ordered by max(h, k).
LimitSetEstimate estimate_cord_set(const GalleryFunction& f, double x, const SamplingBudget& budget = {});

struct CordPoint {
  double h = 0.0;
  double k = 0.0;
  ExtReal value;
};

/// Bisection along t -> (t h_minus + (1-t) h_plus, t k_minus + (1-t) k_plus)
/// between two witnesses whose cord quotients strictly bracket K. Returns
/// at once if a witness is already within tol. Throws ErrorKind::bracket
/// without a bracket, ErrorKind::search_failure when bisection stalls or
/// runs out of iterations, ErrorKind::param for discontinuous f or tol <= 0.
CordPoint target_cord(const GalleryFunction& f, double x, double K, double tol, const CordPoint& minus,
                      const CordPoint& plus, int max_iterations = 200);

struct CordBracket {
  CordPoint below;  // value <= K
  CordPoint above;  // value >= K
};

/// Samples cord pairs as in estimate_cord_set and returns the closest
/// witnesses on each side of K (the same pair twice when one is within tol).
/// Throws ErrorKind::bracket when the samples do not straddle K.
CordBracket find_cord_bracket(const GalleryFunction& f, double x, double K, double tol,
                              const SamplingBudget& budget = {});

/// find_cord_bracket followed by target_cord.
CordPoint solve_target(const GalleryFunction& f, double x, double K, double tol,
                       const SamplingBudget& budget = {});

struct PolyWeight {
  std::int64_t i = 0;
  std::int64_t j = 0;
  double r = 0.0;      // j^m b / (j^m b + i^m a)
  double limit = 0.0;  // r R + (1 - r) L
};

struct PolyPrediction {
  std::vector<PolyWeight> weights;
  ClosedExtSet limits;
  double window_lo = 0.0;  // [min(L,R) + delta, max(L,R) - delta]
  double window_hi = 0.0;
  double max_gap = 0.0;    // between consecutive limits inside the window
};

/// Cord limits of a two-slope function along h_{in}, k_{jn} when the
/// sequences decay like 1/(a n^m) and 1/(b n^m). Requires a, b, m > 0 and
/// bounds >= 1 (ErrorKind::param).
PolyPrediction predict_poly(double a, double b, double m, double R, double L, std::int64_t i_max,
                            std::int64_t j_max, double margin = 0.1);

/// Cord limits of a two-slope function along h_n = a^-n, k_n = b^-n. When
/// a^q = b^p exactly, the limits 1/(1 + beta^t) R + ... for t in
/// [t_min, t_max], beta = b^(1/q), together with R and L (the accumulation
/// points). Otherwise the interval between L and R, with approx_target
/// witnesses for nine interior targets.
LimitSetEstimate predict_exp(double a, double b, double R, double L, std::int64_t t_min = -60,
                             std::int64_t t_max = 60, double tol = 1e-3,
                             Precision precision = working_precision());

/// Indices (i, j) whose cord quotient r R + (1 - r) L, r = 1/(1 + a^i/b^j),
/// lies within tol of K. K must lie strictly between L and R
/// (ErrorKind::param). nullopt when no witness exists with i <= i_bound.
std::optional<ExpWitness> exp_witness(double a, double b, double R, double L, double K, double tol,
                                      std::int64_t i_bound = 1'000'000,
                                      Precision precision = working_precision());

void to_json(nlohmann::json& j, const Evidence& e);
void to_json(nlohmann::json& j, const ExpWitness& w);
void to_json(nlohmann::json& j, const LimitSetEstimate& e);
void to_json(nlohmann::json& j, const CordPoint& p);
void to_json(nlohmann::json& j, const PolyPrediction& p);

/// CSV "kind,lo,hi" with one row per point or interval of the set.
std::string to_csv(const ClosedExtSet& s);

}  // namespace seqderiv
