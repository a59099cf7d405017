#include "seqderiv/limitset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seqderiv/error.hpp"
#include "rng.hpp"

namespace seqderiv {

std::string to_string(Side s) {
  switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::both: return "both";
  }
  return "both";
}

Side parse_side(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  if (s == "both") return Side::both;
  throw Error(ErrorKind::param, "side must be left, right or both, got '" + s + "'");
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::empty: return "empty";
    case Classification::single_point: return "single_point";
    case Classification::closed_interval: return "closed_interval";
    case Classification::discrete_with_accumulation: return "discrete_with_accumulation";
    case Classification::unknown: return "unknown";
  }
  return "unknown";
}

Classification classify(const ClosedExtSet& s) {
  const auto ni = s.intervals().size();
  const auto np = s.points().size();
  if (ni == 0 && np == 0) return Classification::empty;
  if (ni == 0 && np == 1) return Classification::single_point;
  if (ni == 1 && np == 0) return Classification::closed_interval;
  if (ni == 0) return Classification::discrete_with_accumulation;
  return Classification::unknown;
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kAtomTol = 1e-13;
constexpr std::size_t kMinTrace = 100;

struct Charted {
  double c;
  ExtReal v;
};

ExtReal snap(const Charted& x, double tol) {
  if (x.c >= kHalfPi - tol) return ExtReal::pos_inf();
  if (x.c <= -kHalfPi + tol) return ExtReal::neg_inf();
  return x.v;
}

void validate_clustering(double tail_fraction, double cluster_tol) {
  if (!(tail_fraction > 0 && tail_fraction <= 1)) throw Error(ErrorKind::param, "tail_fraction must lie in (0, 1]");
  if (!(cluster_tol > 0)) throw Error(ErrorKind::param, "cluster_tol must be > 0");
}

}  // namespace

ClosedExtSet subsequential_limits(const std::vector<ExtReal>& values, double tail_fraction, double cluster_tol) {
  validate_clustering(tail_fraction, cluster_tol);
  if (values.size() < kMinTrace) {
    throw Error(ErrorKind::insufficient_data,
                "need at least 100 values, got " + std::to_string(values.size()));
  }
  const auto tail_n = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(values.size()))));
  std::vector<Charted> tail;
  tail.reserve(tail_n);
  for (auto it = values.end() - static_cast<std::ptrdiff_t>(tail_n); it != values.end(); ++it) {
    tail.push_back({chart(*it), *it});
  }
  std::sort(tail.begin(), tail.end(), [](const Charted& a, const Charted& b) { return a.c < b.c; });

  // Split into atoms (repeated values) and diffuse values.
  struct Atom {
    Charted at;
    std::size_t count;
  };
  std::vector<Atom> atoms;
  std::vector<Charted> diffuse;
  for (std::size_t i = 0; i < tail.size();) {
    std::size_t j = i + 1;
    while (j < tail.size() && tail[j].c - tail[j - 1].c <= kAtomTol) ++j;
    if (j - i >= 2) atoms.push_back({tail[i + (j - i - 1) / 2], j - i});
    else diffuse.push_back(tail[i]);
    i = j;
  }

  struct Candidate {
    Charted at;
    std::size_t weight;
  };
  std::vector<Candidate> candidates;
  std::vector<std::pair<Charted, Charted>> spans;

  for (const auto& a : atoms) candidates.push_back({a.at, a.count});

  // Single linkage at cluster_tol, then chains across gaps < 3 cluster_tol.
  for (std::size_t i = 0; i < diffuse.size();) {
    std::size_t j = i + 1;
    while (j < diffuse.size() && diffuse[j].c - diffuse[j - 1].c < 3 * cluster_tol) ++j;
    if (diffuse[j - 1].c - diffuse[i].c <= cluster_tol) {
      candidates.push_back({diffuse[i + (j - i - 1) / 2], j - i});
    } else {
      spans.emplace_back(diffuse[i], diffuse[j - 1]);
    }
    i = j;
  }

  // Point candidates near an interval widen it; the rest collapse, within
  // cluster_tol, onto the best supported one.
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) { return a.at.c < b.at.c; });
  std::vector<Candidate> loose;
  for (const auto& cand : candidates) {
    bool absorbed = false;
    for (auto& [lo, hi] : spans) {
      if (cand.at.c >= lo.c - 3 * cluster_tol && cand.at.c <= hi.c + 3 * cluster_tol) {
        if (cand.at.c < lo.c) lo = cand.at;
        if (cand.at.c > hi.c) hi = cand.at;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) loose.push_back(cand);
  }
  std::vector<ExtReal> points;
  for (std::size_t i = 0; i < loose.size();) {
    std::size_t j = i + 1;
    std::size_t best = i;
    while (j < loose.size() && loose[j].at.c - loose[j - 1].at.c <= cluster_tol) {
      if (loose[j].weight > loose[best].weight) best = j;
      ++j;
    }
    points.push_back(snap(loose[best].at, cluster_tol));
    i = j;
  }
  std::vector<ExtInterval> intervals;
  for (const auto& [lo, hi] : spans) intervals.push_back({snap(lo, cluster_tol), snap(hi, cluster_tol)});
  return normalize(std::move(intervals), std::move(points));
}

ClosedExtSet subsequential_limits(const QuotientTrace& t, double tail_fraction, double cluster_tol) {
  return subsequential_limits(t.values(), tail_fraction, cluster_tol);
}

namespace {

using detail::Rng;

constexpr int kProbePhases = 64;
constexpr std::int64_t kDiscreteIndexCap = std::int64_t{1} << 40;

struct Window {
  double lo;
  double hi;
};

Window step_window(const GalleryFunction& f, double x, const SamplingBudget& b, Side side) {
  const double scale = std::max(1.0, std::abs(x));
  Window w{b.h_min * scale, b.h_max * scale};
  // Shrink so both x + h_max and x - h_max stay inside the domain on the
  // sides in use.
  const Domain& d = f.domain();
  if (side != Side::left && std::isfinite(d.hi)) w.hi = std::min(w.hi, (d.hi - x) * 0.5);
  if (side != Side::right && std::isfinite(d.lo)) w.hi = std::min(w.hi, (x - d.lo) * 0.5);
  if (!(w.hi > w.lo)) {
    throw Error(ErrorKind::domain, "no room for steps of size " + format_number(w.lo) + " at x = " +
                                       format_number(x) + " in " + d.describe());
  }
  return w;
}

void validate_budget(const SamplingBudget& b) {
  if (b.samples < 100) throw Error(ErrorKind::param, "budget must be at least 100 samples");
  validate_clustering(b.tail_fraction, b.cluster_tol);
  if (!(b.stability_tol > 0)) throw Error(ErrorKind::param, "stability_tol must be > 0");
  if (!(b.h_min > 0 && b.h_max > b.h_min)) throw Error(ErrorKind::param, "step window needs 0 < h_min < h_max");
}

void require_point(const GalleryFunction& f, double x) {
  if (!f.in_domain(x)) {
    throw Error(ErrorKind::domain, "x = " + format_number(x) + " is outside the domain " + f.domain().describe());
  }
}

class StepSampler {
 public:
  StepSampler(Rng& rng, Window w) : rng_(rng), w_(w), log_ratio_(std::log(w.hi / w.lo)) {}

  double log_uniform() { return w_.lo * std::exp(log_ratio_ * rng_.uniform()); }

  // 1/(theta + 2 pi k) with theta from a fixed phase grid and k chosen so
  // the step falls in the window.
  double harmonic_probe(int phase) {
    const double theta = 2 * std::numbers::pi * static_cast<double>(phase) / kProbePhases;
    const double target = log_uniform();
    const double k = std::max(1.0, std::round((1.0 / target - theta) / (2 * std::numbers::pi)));
    return 1.0 / (theta + 2 * std::numbers::pi * k);
  }

  int phase() { return static_cast<int>(rng_.index(0, kProbePhases - 1)); }

 private:
  Rng& rng_;
  Window w_;
  double log_ratio_;
};

struct Sample {
  double key;
  ExtReal value;
};

std::vector<ExtReal> tail_order(std::vector<Sample>& samples) {
  std::stable_sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.key > b.key; });
  std::vector<ExtReal> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.value);
  return out;
}

LimitSetEstimate finish(std::string kind, std::vector<Sample>& samples, const SamplingBudget& b, std::int64_t skipped) {
  LimitSetEstimate e;
  e.kind = std::move(kind);
  e.evidence.samples_requested = b.samples;
  e.evidence.samples_used = static_cast<std::int64_t>(samples.size());
  e.evidence.samples_skipped = skipped;
  e.evidence.seed = b.seed;
  e.evidence.cluster_tol = b.cluster_tol;
  e.evidence.tail_fraction = b.tail_fraction;
  e.evidence.stability_tol = b.stability_tol;
  auto ordered = tail_order(samples);
  e.evidence.tail_size = static_cast<std::int64_t>(std::ceil(b.tail_fraction * static_cast<double>(ordered.size())));
  e.set = subsequential_limits(ordered, b.tail_fraction, b.cluster_tol);
  e.classification = classify(e.set);
  if (e.classification == Classification::single_point ||
      e.classification == Classification::discrete_with_accumulation) {
    e.points = e.set.points();
  }
  return e;
}

template <typename Estimator>
void attach_stability(LimitSetEstimate& e, const SamplingBudget& b, Estimator&& run_half) {
  if (!b.check_stability) return;
  SamplingBudget half = b;
  half.samples = b.samples / 2;
  half.check_stability = false;
  if (half.samples < 100) return;
  try {
    LimitSetEstimate h = run_half(half);
    double d = (e.set.empty() || h.set.empty()) ? (e.set.empty() == h.set.empty() ? 0.0 : kHalfPi * 2)
                                                : hausdorff(e.set, h.set);
    e.evidence.stability_distance = d;
    e.evidence.stable = d <= b.stability_tol;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::insufficient_data) throw;
  }
}

// A sample index of a discrete domain: uniform for short index ranges,
// log-uniform for long ones so that index ratios spread over many decades.
double discrete_term(Rng& rng, const DecaySequence& s, Index last) {
  const Index lo = s.offset();
  const Index hi = std::min<std::int64_t>(last, lo + kDiscreteIndexCap);
  if (hi - lo <= 100'000) return s.term(rng.index(lo, hi));
  const double span = std::log(static_cast<double>(hi - lo + 1));
  auto n = lo + static_cast<Index>(std::exp(span * rng.uniform())) - 1;
  return s.term(std::clamp(n, lo, hi));
}

LimitSetEstimate secant_impl(const GalleryFunction& f, double x, Side side, const SamplingBudget& b) {
  Rng rng(b.seed);
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(b.samples));
  std::int64_t skipped = 0;

  const Domain& d = f.domain();
  if (d.kind == Domain::Kind::discrete) {
    if (x != 0.0) throw Error(ErrorKind::domain, "discrete domains are sampled at x = 0 only");
    const auto& ds = *d.samples;
    const bool right_ok = ds.h_last >= ds.h.offset();
    const bool left_ok = ds.k_last >= ds.k.offset();
    if ((side != Side::left && !right_ok) || (side != Side::right && !left_ok)) {
      throw Error(ErrorKind::domain, "side " + to_string(side) + " has no samples in " + d.describe());
    }
    for (std::int64_t s = 0; s < b.samples; ++s) {
      const bool right = side == Side::right || (side == Side::both && s % 2 == 0);
      const double step = right ? discrete_term(rng, ds.h, ds.h_last) : -discrete_term(rng, ds.k, ds.k_last);
      samples.push_back({std::abs(step), newton_quotient(f, 0.0, step)});
    }
    return finish("secant", samples, b, skipped);
  }

  const Window w = step_window(f, x, b, side);
  StepSampler sampler(rng, w);
  for (std::int64_t s = 0; s < b.samples; ++s) {
    const bool right = side == Side::right || (side == Side::both && s % 2 == 0);
    const double h = (s % 4 == 3) ? sampler.harmonic_probe(sampler.phase()) : sampler.log_uniform();
    const double step = right ? (x + h) - x : (x - h) - x;
    if (step == 0.0 || !f.in_domain(x + step)) {
      ++skipped;
      continue;
    }
    samples.push_back({std::abs(step), newton_quotient(f, x, step)});
  }
  return finish("secant", samples, b, skipped);
}

// Cord step pairs for interval domains.
struct PairSampler {
  StepSampler& steps;
  Rng& rng;

  std::pair<double, double> next(std::int64_t s) {
    switch (s % 10) {
      case 0: case 1: case 2: case 3:
        return {steps.log_uniform(), steps.log_uniform()};
      case 4: case 5: case 6: {
        const double u = steps.log_uniform();
        const int p = 1 + static_cast<int>(rng.index(0, 2));
        const double v = std::pow(u, p);
        return rng.index(0, 1) == 0 ? std::pair{u, v} : std::pair{v, u};
      }
      default:
        return {steps.harmonic_probe(steps.phase()), steps.harmonic_probe(steps.phase())};
    }
  }
};

template <typename Visit>
std::int64_t sample_cord_pairs(const GalleryFunction& f, double x, const SamplingBudget& b, Visit&& visit) {
  Rng rng(b.seed);
  std::int64_t skipped = 0;
  const Domain& d = f.domain();
  if (d.kind == Domain::Kind::discrete) {
    if (x != 0.0) throw Error(ErrorKind::domain, "discrete domains are sampled at x = 0 only");
    const auto& ds = *d.samples;
    if (ds.h_last < ds.h.offset() || ds.k_last < ds.k.offset()) {
      throw Error(ErrorKind::domain, "cord quotients need samples on both sides in " + d.describe());
    }
    for (std::int64_t s = 0; s < b.samples; ++s) {
      const double h = discrete_term(rng, ds.h, ds.h_last);
      const double k = discrete_term(rng, ds.k, ds.k_last);
      visit(h, k, cord_quotient(f, 0.0, h, k));
    }
    return skipped;
  }
  const Window w = step_window(f, x, b, Side::both);
  StepSampler steps(rng, w);
  PairSampler pairs{steps, rng};
  for (std::int64_t s = 0; s < b.samples; ++s) {
    auto [h, k] = pairs.next(s);
    h = (x + h) - x;
    k = x - (x - k);
    if (!(h > 0) || !(k > 0) || !f.in_domain(x + h) || !f.in_domain(x - k)) {
      ++skipped;
      continue;
    }
    visit(h, k, cord_quotient(f, x, h, k));
  }
  return skipped;
}

LimitSetEstimate cord_impl(const GalleryFunction& f, double x, const SamplingBudget& b) {
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(b.samples));
  auto skipped = sample_cord_pairs(f, x, b, [&](double h, double k, const ExtReal& v) {
    samples.push_back({std::max(h, k), v});
  });
  return finish("cord", samples, b, skipped);
}

}  // namespace

LimitSetEstimate estimate_secant_set(const GalleryFunction& f, double x, Side side, const SamplingBudget& budget) {
  validate_budget(budget);
  require_point(f, x);
  auto e = secant_impl(f, x, side, budget);
  attach_stability(e, budget, [&](const SamplingBudget& half) { return secant_impl(f, x, side, half); });
  return e;
}

LimitSetEstimate estimate_cord_set(const GalleryFunction& f, double x, const SamplingBudget& budget) {
  validate_budget(budget);
  require_point(f, x);
  auto e = cord_impl(f, x, budget);
  attach_stability(e, budget, [&](const SamplingBudget& half) { return cord_impl(f, x, half); });
  return e;
}

CordPoint target_cord(const GalleryFunction& f, double x, double K, double tol, const CordPoint& minus,
                      const CordPoint& plus, int max_iterations) {
  if (!(tol > 0)) throw Error(ErrorKind::param, "target_cord: tol must be > 0");
  if (!std::isfinite(K)) throw Error(ErrorKind::param, "target_cord: K must be finite");
  if (!f.continuous()) throw Error(ErrorKind::param, "target_cord: " + f.name() + " is not continuous");

  auto eval = [&](double h, double k) { return CordPoint{h, k, cord_quotient(f, x, h, k)}; };
  auto miss = [&](const CordPoint& p) { return p.value.to_double() - K; };

  const CordPoint m = eval(minus.h, minus.k);
  const CordPoint p = eval(plus.h, plus.k);
  if (std::abs(miss(m)) <= tol) return m;
  if (std::abs(miss(p)) <= tol) return p;
  if (!((miss(m) < 0 && miss(p) > 0) || (miss(m) > 0 && miss(p) < 0))) {
    throw Error(ErrorKind::bracket, "target_cord: witnesses " + format_number(m.value) + " and " +
                                        format_number(p.value) + " do not bracket " + format_number(K));
  }
  // Path t -> t (h-, k-) + (1 - t) (h+, k+); t = 1 at the minus witness.
  const bool minus_below = miss(m) < 0;
  double t_lo = 0.0;  // endpoint on the side of `plus`
  double t_hi = 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    const double t = 0.5 * (t_lo + t_hi);
    if (t <= t_lo || t >= t_hi) break;
    const CordPoint c = eval(t * m.h + (1 - t) * p.h, t * m.k + (1 - t) * p.k);
    const double e = miss(c);
    if (std::abs(e) <= tol) return c;
    // Keep the sub-path whose endpoints still straddle K.
    if ((e < 0) == minus_below) t_hi = t;
    else t_lo = t;
  }
  throw Error(ErrorKind::search_failure,
              "target_cord: bisection did not reach tolerance " + format_number(tol) + " for K = " + format_number(K));
}

CordBracket find_cord_bracket(const GalleryFunction& f, double x, double K, double tol, const SamplingBudget& budget) {
  validate_budget(budget);
  require_point(f, x);
  std::optional<CordPoint> below, above, hit;
  sample_cord_pairs(f, x, budget, [&](double h, double k, const ExtReal& v) {
    if (hit) return;
    const double q = v.to_double();
    if (std::abs(q - K) <= tol) {
      hit = CordPoint{h, k, v};
    } else if (q < K) {
      if (!below || q > below->value.to_double()) below = CordPoint{h, k, v};
    } else if (!above || q < above->value.to_double()) {
      above = CordPoint{h, k, v};
    }
  });
  if (hit) return {*hit, *hit};
  if (!below || !above) {
    throw Error(ErrorKind::bracket, "no sampled cord quotients on both sides of " + format_number(K));
  }
  return {*below, *above};
}

CordPoint solve_target(const GalleryFunction& f, double x, double K, double tol, const SamplingBudget& budget) {
  const CordBracket br = find_cord_bracket(f, x, K, tol, budget);
  if (std::abs(br.below.value.to_double() - K) <= tol) return br.below;
  return target_cord(f, x, K, tol, br.below, br.above);
}

PolyPrediction predict_poly(double a, double b, double m, double R, double L, std::int64_t i_max, std::int64_t j_max,
                            double margin) {
  if (!(a > 0) || !(b > 0) || !(m > 0)) throw Error(ErrorKind::param, "predict_poly: a, b, m must be > 0");
  if (i_max < 1 || j_max < 1) throw Error(ErrorKind::param, "predict_poly: bounds must be >= 1");
  if (!std::isfinite(R) || !std::isfinite(L)) throw Error(ErrorKind::param, "predict_poly: R and L must be finite");
  if (!(margin >= 0 && margin < 0.5)) throw Error(ErrorKind::param, "predict_poly: margin must lie in [0, 0.5)");
  PolyPrediction out;
  std::vector<ExtReal> limits;
  std::vector<double> raw;
  for (std::int64_t i = 1; i <= i_max; ++i) {
    const double ia = std::pow(static_cast<double>(i), m) * a;
    for (std::int64_t j = 1; j <= j_max; ++j) {
      const double jb = std::pow(static_cast<double>(j), m) * b;
      const double r = jb / (jb + ia);
      const double limit = r * R + (1 - r) * L;
      out.weights.push_back({i, j, r, limit});
      raw.push_back(limit);
    }
  }
  for (double v : raw) limits.push_back(ext(v));
  out.limits = ClosedExtSet::from_points(std::move(limits));
  const double lo = std::min(L, R), hi = std::max(L, R);
  const double delta = margin * (hi - lo);
  out.window_lo = lo + delta;
  out.window_hi = hi - delta;
  std::vector<double> inside;
  for (double v : raw) {
    if (v >= out.window_lo && v <= out.window_hi) inside.push_back(v);
  }
  std::sort(inside.begin(), inside.end());
  for (std::size_t i = 1; i < inside.size(); ++i) out.max_gap = std::max(out.max_gap, inside[i] - inside[i - 1]);
  return out;
}

std::optional<ExpWitness> exp_witness(double a, double b, double R, double L, double K, double tol, std::int64_t i_bound,
                                      Precision precision) {
  if (!(a > 1) || !(b > 1)) throw Error(ErrorKind::param, "exp_witness: a, b must be > 1");
  if (!(tol > 0)) throw Error(ErrorKind::param, "exp_witness: tol must be > 0");
  if (R == L) throw Error(ErrorKind::param, "exp_witness: R == L leaves nothing between them");
  const double r = (K - L) / (R - L);
  if (!(r > 0 && r < 1)) throw Error(ErrorKind::param, "exp_witness: K must lie strictly between L and R");
  const double s = (1 - r) / r;
  const double t = std::log(s) / std::log(b);
  // |d limit / d(i alpha - j)| = |R - L| r (1 - r) log b <= |R - L| log(b) / 4.
  const double eps = tol / (std::abs(R - L) * std::log(b) / 4) * 0.5;
  const auto w = approx_target(log_ratio(a, b, precision), t, eps, i_bound);
  if (!w) return std::nullopt;
  ExpWitness out;
  out.target = K;
  out.approx = *w;
  out.r = 1.0 / (1.0 + std::pow(b, w->achieved));
  out.limit = out.r * R + (1 - out.r) * L;
  if (std::abs(out.limit - K) > tol) return std::nullopt;
  return out;
}

LimitSetEstimate predict_exp(double a, double b, double R, double L, std::int64_t t_min, std::int64_t t_max,
                             double tol, Precision precision) {
  if (!(a > 1) || !(b > 1)) throw Error(ErrorKind::param, "predict_exp: a, b must be > 1");
  if (!std::isfinite(R) || !std::isfinite(L)) throw Error(ErrorKind::param, "predict_exp: R and L must be finite");
  if (t_min > t_max) throw Error(ErrorKind::param, "predict_exp: empty t range");
  LimitSetEstimate e;
  e.kind = "predict_exp";
  e.evidence.stable = true;
  if (R == L) {
    e.set = ClosedExtSet::point(ext(R));
    e.classification = Classification::single_point;
    e.points = e.set.points();
    return e;
  }
  const RationalRelation rel = rational_check(a, b, 64, precision);
  if (rel.found && rel.exact) {
    std::vector<ExtReal> pts{ext(R), ext(L)};
    for (std::int64_t t = t_min; t <= t_max; ++t) {
      const double r = 1.0 / (1.0 + std::pow(b, static_cast<double>(t) / static_cast<double>(rel.q)));
      pts.push_back(ext(r * R + (1 - r) * L));
    }
    e.set = ClosedExtSet::from_points(std::move(pts));
    e.classification = Classification::discrete_with_accumulation;
    e.points = e.set.points();
    e.accumulation = {ext(std::min(R, L)), ext(std::max(R, L))};
    return e;
  }
  e.set = ClosedExtSet::interval(ext(std::min(R, L)), ext(std::max(R, L)));
  e.classification = Classification::closed_interval;
  for (int g = 1; g <= 9; ++g) {
    const double K = L + (R - L) * g / 10.0;
    if (auto w = exp_witness(a, b, R, L, K, tol, 1'000'000, precision)) e.witnesses.push_back(*w);
  }
  return e;
}

void to_json(nlohmann::json& j, const Evidence& e) {
  j = {{"samples_requested", e.samples_requested},
       {"samples_used", e.samples_used},
       {"samples_skipped", e.samples_skipped},
       {"tail_size", e.tail_size},
       {"seed", e.seed},
       {"cluster_tol", e.cluster_tol},
       {"tail_fraction", e.tail_fraction},
       {"stability_tol", e.stability_tol},
       {"stable", e.stable},
       {"stability_distance", e.stability_distance ? nlohmann::json(*e.stability_distance) : nlohmann::json(nullptr)}};
}

void to_json(nlohmann::json& j, const ExpWitness& w) {
  j = {{"target", w.target}, {"witness", w.approx}, {"r", w.r}, {"limit", w.limit}};
}

void to_json(nlohmann::json& j, const LimitSetEstimate& e) {
  j = {{"kind", e.kind},
       {"set", e.set},
       {"classification", to_string(e.classification)},
       {"points", e.points},
       {"accumulation", e.accumulation},
       {"evidence", e.evidence}};
  if (!e.witnesses.empty()) j["witnesses"] = e.witnesses;
}

void to_json(nlohmann::json& j, const CordPoint& p) { j = {{"h", p.h}, {"k", p.k}, {"value", p.value}}; }

void to_json(nlohmann::json& j, const PolyPrediction& p) {
  auto weights = nlohmann::json::array();
  for (const auto& w : p.weights) weights.push_back({{"i", w.i}, {"j", w.j}, {"r", w.r}, {"limit", w.limit}});
  j = {{"weights", std::move(weights)},
       {"limits", p.limits},
       {"window", {p.window_lo, p.window_hi}},
       {"max_gap", p.max_gap}};
}

std::string to_csv(const ClosedExtSet& s) {
  std::string out = "kind,lo,hi\n";
  for (const auto& iv : s.intervals()) out += "interval," + format_number(iv.lo) + "," + format_number(iv.hi) + "\n";
  for (const auto& p : s.points()) out += "point," + format_number(p) + "," + format_number(p) + "\n";
  return out;
}

}  // namespace seqderiv
