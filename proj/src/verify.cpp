#include "seqderiv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "rng.hpp"
#include "seqderiv/dioph.hpp"
#include "seqderiv/error.hpp"
#include "seqderiv/extreal.hpp"
#include "seqderiv/gallery.hpp"
#include "seqderiv/limitset.hpp"
#include "seqderiv/quotient.hpp"
#include "seqderiv/seqgen.hpp"

namespace seqderiv {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

using detail::Rng;
using Suite = std::function<std::vector<CheckResult>(const VerifyConfig&)>;

std::string num(double v) { return format_number(v); }

SamplingBudget budget_of(const VerifyConfig& c) {
  SamplingBudget b;
  b.samples = c.budget;
  b.seed = c.seed;
  b.cluster_tol = c.cluster_tol;
  return b;
}

CheckResult check(std::string name, bool ok, std::string detail) { return {std::move(name), ok, std::move(detail)}; }

// Cord quotients of sin at 0.3 along geometric pairs h_n = s ρ^n,
// k_n = t ρ^n, compared with cos(0.3) while both steps lie in [1e-9, 1e-7].
std::vector<CheckResult> differentiable(const VerifyConfig& c) {
  Rng rng(c.seed);
  const auto f = make_sin();
  const double x = 0.3;
  const double expected = std::cos(x);
  double worst = 0.0;
  std::int64_t compared = 0;
  for (int pair = 0; pair < 100; ++pair) {
    double h = std::pow(10.0, rng.uniform(-3, -1));
    double k = std::pow(10.0, rng.uniform(-3, -1));
    const double rho = rng.uniform(0.5, 0.9);
    while (std::min(h, k) >= 1e-9) {
      if (h <= 1e-7 && k <= 1e-7) {
        worst = std::max(worst, std::abs(cord_quotient(f, x, h, k).value() - expected));
        ++compared;
      }
      h *= rho;
      k *= rho;
    }
  }
  std::vector<CheckResult> out;
  out.push_back(check("sin cord quotients approach cos(0.3)", compared > 0 && worst <= 1e-6,
                      "pairs=100 compared=" + std::to_string(compared) + " max_error=" + num(worst) + " bound=1e-6"));
  const auto sq = make_square();
  double worst_sq = 0.0;
  for (double h = 1e-2; h >= 1e-7; h /= 3) {
    worst_sq = std::max(worst_sq, std::abs(cord_quotient(sq, 1.0, h, h / 2).value() - 2.0 - (h - h / 2)));
  }
  out.push_back(check("square cord quotient equals 2 + h - k", worst_sq <= 1e-8, "max_error=" + num(worst_sq)));
  return out;
}

std::vector<CheckResult> abs_cord(const VerifyConfig& c) {
  const auto f = make_abs();
  SamplingBudget search = budget_of(c);
  search.samples = std::min<std::int64_t>(c.budget, 20'000);
  std::vector<CheckResult> out;
  double worst = 0.0;
  int hits = 0;
  std::string failures;
  for (int step = -10; step <= 10; ++step) {
    const double K = step / 10.0;
    try {
      const CordPoint p = solve_target(f, 0.0, K, c.target_tol, search);
      const double err = std::abs(p.value.to_double() - K);
      worst = std::max(worst, err);
      if (err <= c.target_tol) ++hits;
      else failures += " K=" + num(K);
    } catch (const Error& e) {
      failures += " K=" + num(K) + "(" + std::string(to_string(e.kind())) + ")";
    }
  }
  out.push_back(check("target_cord reaches every K in -1..1 step 0.1", hits == 21,
                      "hits=" + std::to_string(hits) + "/21 max_error=" + num(worst) + " tol=" + num(c.target_tol) +
                          (failures.empty() ? "" : " failed:" + failures)));
  const auto est = estimate_cord_set(f, 0.0, budget_of(c));
  const double d = est.set.empty() ? 1.0 : hausdorff(est.set, ClosedExtSet::interval(ext(-1), ext(1)));
  out.push_back(check("cord set estimate is [-1, 1]", d <= 0.02,
                      "estimate=" + to_string(est.set) + " hausdorff=" + num(d) + " bound=0.02"));
  return out;
}

std::vector<CheckResult> sine_interval(const VerifyConfig& c) {
  const double a = c.a.value_or(-1.0);
  const double b = c.b.value_or(2.0);
  const auto f = make_sine_envelope(a, b);
  const auto est = estimate_secant_set(f, 0.0, Side::right, budget_of(c));
  // With |b| < |a| the construction reduces to a x sin(1/x), whose secant
  // set is [a, |a|].
  const auto expected = ClosedExtSet::interval(ext(a), ext(std::abs(b) < std::abs(a) ? std::abs(a) : b));
  const double d = est.set.empty() ? 1.0 : hausdorff(est.set, expected);
  return {check("right secant set of sine_envelope(" + num(a) + ", " + num(b) + ") is " + to_string(expected),
                d <= 0.05, "estimate=" + to_string(est.set) + " hausdorff=" + num(d) + " bound=0.05")};
}

std::vector<CheckResult> inclusion(const VerifyConfig& c) {
  std::vector<CheckResult> out;
  for (const auto& entry : gallery_catalog()) {
    if (!entry.continuous) continue;
    const auto f = make_function(entry.example_spec);
    if (!f.in_domain(-1e-3) || !f.in_domain(1e-3)) {
      out.push_back(check(entry.name + ": secant set inside cord set", true,
                          "skipped: cord quotients need both sides of 0 in " + f.domain().describe()));
      continue;
    }
    const auto secant = estimate_secant_set(f, 0.0, Side::both, budget_of(c));
    const auto cord = estimate_cord_set(f, 0.0, budget_of(c));
    const double d = (secant.set.empty() || cord.set.empty()) ? 1.0 : excess(secant.set, cord.set);
    out.push_back(check(entry.name + ": secant set inside cord set", d <= 0.02,
                        "secant=" + to_string(secant.set) + " cord=" + to_string(cord.set) + " excess=" + num(d) +
                            " bound=0.02"));
  }
  return out;
}

std::vector<CheckResult> poly_rate(const VerifyConfig& c) {
  const double a = c.a.value_or(1.0);
  const double b = c.b.value_or(3.0);
  const double m = c.m.value_or(2.0);
  std::vector<CheckResult> out;
  const auto first = predict_poly(a, b, m, 1.0, 0.0, 1, 1);
  const double expected_first = b / (b + a);
  out.push_back(check("weight at i = j = 1 equals b / (a + b)", first.weights.front().r == expected_first,
                      "r=" + num(first.weights.front().r) + " expected=" + num(expected_first)));

  const auto grid = predict_poly(a, b, m, 1.0, 0.0, 20, 200);
  double worst_ratio = 0.0;
  for (const auto& w : grid.weights) {
    if (w.j == 200) continue;
    const auto& next = grid.weights[static_cast<std::size_t>((w.i - 1) * 200 + w.j)];
    worst_ratio = std::max(worst_ratio, (next.r - w.r) * 2.0 * static_cast<double>(w.j));
  }
  out.push_back(check("consecutive-j gaps stay below 1/(2j)", worst_ratio < 1.0,
                      "max gap * 2j = " + num(worst_ratio) + " over i<=20, j<200"));

  const auto f = make_two_slope(1.0, 0.0, DecaySequence::power(m, a), DecaySequence::power(m, b));
  const auto candidates = predict_poly(a, b, m, 1.0, 0.0, 200, 200);
  int reached = 0;
  std::string misses;
  double worst = 0.0;
  for (int g = 3; g <= 17; ++g) {
    const double K = g * 0.05;
    const PolyWeight* best = &candidates.weights.front();
    for (const auto& w : candidates.weights) {
      if (std::abs(w.limit - K) < std::abs(best->limit - K)) best = &w;
    }
    const Index i = best->i, j = best->j;
    const auto hs = subsequence(DecaySequence::power(m, a), [i](Index n) { return i * n; });
    const auto ks = subsequence(DecaySequence::power(m, b), [j](Index n) { return j * n; });
    const auto tr = trace(f, 0.0, hs, ks, 400);
    const auto limits = subsequential_limits(tr, 0.5, c.cluster_tol);
    const double d = limits.empty() ? 1.0 : std::max(std::abs(limits.min().to_double() - K),
                                                     std::abs(limits.max().to_double() - K));
    worst = std::max(worst, d);
    if (d <= 1e-3) ++reached;
    else misses += " K=" + num(K);
  }
  out.push_back(check("every K on the 0.05 grid of (0.1, 0.9) is an empirical cord limit", reached == 15,
                      "reached=" + std::to_string(reached) + "/15 max_error=" + num(worst) + " bound=1e-3" +
                          (misses.empty() ? "" : " missed:" + misses)));
  return out;
}

std::vector<CheckResult> exp_rate(const VerifyConfig& c) {
  const double a = c.a.value_or(2.0);
  const double b = c.b.value_or(4.0);
  std::vector<CheckResult> out;
  const auto rel = rational_check(a, b);
  const auto f = make_two_slope(1.0, 0.0, DecaySequence::exponential(a), DecaySequence::exponential(b));
  if (rel.found && rel.exact) {
    out.push_back(check("log a / log b is rational", true, to_string(rel)));
    const auto predicted = predict_exp(a, b, 1.0, 0.0, -1100, 1100);
    const auto empirical = estimate_cord_set(f, 0.0, budget_of(c));
    const auto& pp = predicted.set.points();
    double worst = 0.0;
    for (const auto& p : empirical.set.points()) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : pp) best = std::min(best, std::abs(p.to_double() - q.to_double()));
      worst = std::max(worst, best);
    }
    const bool discrete = empirical.set.intervals().empty() && !empirical.set.empty();
    out.push_back(check("every empirical cord limit lies on the predicted lattice", discrete && worst <= 1e-6,
                        "empirical=" + to_string(empirical.set) + " max_distance=" + num(worst) + " bound=1e-6"));
    int intruders = 0;
    for (std::size_t i = 0; i + 1 < pp.size(); ++i) {
      const double lo = pp[i].to_double() + 1e-3;
      const double hi = pp[i + 1].to_double() - 1e-3;
      if (!(hi > lo)) continue;
      for (const auto& p : empirical.set.points()) {
        if (p.to_double() > lo && p.to_double() < hi) ++intruders;
      }
      for (const auto& iv : empirical.set.intervals()) {
        if (iv.hi.to_double() > lo && iv.lo.to_double() < hi) ++intruders;
      }
    }
    out.push_back(check("no empirical limit inside the gaps of the lattice", intruders == 0,
                        "intruders=" + std::to_string(intruders)));
  } else {
    out.push_back(check("log a / log b has no small rational relation", true, to_string(rel)));
    const double K = c.target.value_or(0.4);
    const auto w = exp_witness(a, b, 1.0, 0.0, K, 1e-3, 10'000);
    if (!w) {
      out.push_back(check("witness (i, j) with i <= 1e4 reaches K", false, "no witness for K=" + num(K)));
      return out;
    }
    const double h = DecaySequence::exponential(a).term(w->approx.i);
    const double k = DecaySequence::exponential(b).term(std::max<std::int64_t>(1, w->approx.j));
    const double q = cord_quotient(f, 0.0, h, k).to_double();
    out.push_back(check("witness (i, j) with i <= 1e4 reaches K",
                        w->approx.i <= 10'000 && w->approx.j >= 1 && std::abs(w->limit - K) <= 1e-3 &&
                            std::abs(q - K) <= 1e-3,
                        "i=" + std::to_string(w->approx.i) + " j=" + std::to_string(w->approx.j) + " limit=" +
                            num(w->limit) + " quotient=" + num(q) + " K=" + num(K)));
  }
  return out;
}

std::vector<CheckResult> weierstrass_growth(const VerifyConfig&) {
  const auto f = make_weierstrass(0.5, 13);
  std::vector<double> sup;
  std::string detail;
  for (int d = 2; d <= 7; ++d) {
    double best = 0.0;
    constexpr int kPerDecade = 2000;
    for (int s = 0; s <= kPerDecade; ++s) {
      const double h = std::pow(10.0, -d - static_cast<double>(s) / kPerDecade);
      best = std::max(best, std::abs(newton_quotient(f, 0.0, h).to_double()));
    }
    sup.push_back(best);
    detail += " d" + std::to_string(d) + "=" + num(best);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < sup.size(); ++i) monotone = monotone && sup[i] >= sup[i - 1];
  return {check("per-decade supremum is nondecreasing", monotone, detail.substr(1)),
          check("supremum exceeds 100 by d = 7", sup.back() > 100, "d7=" + num(sup.back()))};
}

ClosedExtSet random_set(Rng& rng) {
  auto value = [&]() {
    const double u = rng.uniform();
    if (u < 0.05) return ExtReal::neg_inf();
    if (u < 0.10) return ExtReal::pos_inf();
    return ext(std::round(rng.uniform(-10, 10) * 8) / 8);
  };
  std::vector<ExtInterval> ivs;
  std::vector<ExtReal> pts;
  const auto n_iv = rng.index(0, 3);
  const auto n_pt = rng.index(n_iv == 0 ? 1 : 0, 3);
  for (std::int64_t i = 0; i < n_iv; ++i) {
    ExtReal x = value(), y = value();
    if (y < x) std::swap(x, y);
    ivs.push_back({x, y});
  }
  for (std::int64_t i = 0; i < n_pt; ++i) pts.push_back(value());
  return normalize(std::move(ivs), std::move(pts));
}

std::vector<CheckResult> kernel(const VerifyConfig& c) {
  Rng rng(c.seed);
  std::vector<CheckResult> out;

  int idempotence_failures = 0, metric_failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto A = random_set(rng), B = random_set(rng), C = random_set(rng);
    if (!(normalize(A) == A)) ++idempotence_failures;
    const double ab = hausdorff(A, B), ba = hausdorff(B, A), bc = hausdorff(B, C), ac = hausdorff(A, C);
    const bool ok = hausdorff(A, A) == 0.0 && ab == ba && ab >= 0 && ac <= ab + bc + 1e-12 && ((ab == 0) == (A == B));
    if (!ok) ++metric_failures;
  }
  out.push_back(check("normalize is idempotent", idempotence_failures == 0,
                      "failures=" + std::to_string(idempotence_failures) + "/1000"));
  out.push_back(check("hausdorff satisfies the metric axioms", metric_failures == 0,
                      "failures=" + std::to_string(metric_failures) + "/1000 triples"));

  const std::vector<GalleryFunction> fs{make_square(), make_cube(), make_sin(), make_abs(), make_glued(-1, 2, -3, 1),
                                        make_weierstrass()};
  int decomposition_failures = 0;
  double worst_ulps = 0.0;
  for (int t = 0; t < 10'000; ++t) {
    const auto& f = fs[static_cast<std::size_t>(rng.index(0, static_cast<std::int64_t>(fs.size()) - 1))];
    const double h = std::pow(10.0, rng.uniform(-8, -1));
    const double k = std::pow(10.0, rng.uniform(-8, -1));
    const auto d = decompose(f, h, k);
    if (!d.cord.is_finite() || !d.right_q.is_finite() || !d.left_q.is_finite()) continue;
    const double recon = d.reconstructed().value();
    const double scale = std::max({std::abs(d.cord.value()), std::abs(d.r * d.right_q.value()),
                                   std::abs(d.one_minus_r * d.left_q.value()), std::numeric_limits<double>::min()});
    const double ulps = std::abs(recon - d.cord.value()) / (std::nextafter(scale, INFINITY) - scale);
    worst_ulps = std::max(worst_ulps, ulps);
    if (ulps > 4.0) ++decomposition_failures;
  }
  out.push_back(check("cord = r right + (1 - r) left within 4 ulps", decomposition_failures == 0,
                      "failures=" + std::to_string(decomposition_failures) + "/10000 max_ulps=" + num(worst_ulps)));

  int alternation_failures = 0;
  std::vector<DoubleDouble> alphas{DoubleDouble(std::sqrt(2.0)), log_ratio(2, 3, Precision::extended),
                                   DoubleDouble(3.141592653589793, 1.2246467991473532e-16),
                                   DoubleDouble(2.718281828459045, 1.4456468917292502e-16)};
  for (int t = 0; t < 50; ++t) alphas.push_back(DoubleDouble(rng.uniform(0.01, 100)));
  for (const auto& alpha : alphas) {
    const auto cf = continued_fraction(alpha, 40);
    double prev = std::numeric_limits<double>::infinity();
    int prev_sign = 0;
    for (std::size_t k = 1; k < cf.convergents.size(); ++k) {
      const auto& cv = cf.convergents[k];
      const DoubleDouble e = alpha * DoubleDouble(static_cast<double>(cv.q)) - DoubleDouble(static_cast<double>(cv.p));
      if (e.hi == 0.0) break;
      const int sign = e.hi > 0 ? 1 : -1;
      if (prev_sign != 0 && sign == prev_sign) ++alternation_failures;
      if (!(std::abs(e.hi) < prev)) ++alternation_failures;
      prev_sign = sign;
      prev = std::abs(e.hi);
    }
  }
  out.push_back(check("convergents alternate and |q alpha - p| decreases", alternation_failures == 0,
                      "failures=" + std::to_string(alternation_failures) + " over " + std::to_string(alphas.size()) +
                          " expansions"));
  return out;
}

struct SuiteDef {
  std::string name;
  Suite run;
};

const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> s{
      {"differentiable", differentiable}, {"abs-cord", abs_cord},   {"sine-interval", sine_interval},
      {"inclusion", inclusion},           {"poly-rate", poly_rate}, {"exp-rate", exp_rate},
      {"weierstrass", weierstrass_growth}, {"kernel", kernel},
  };
  return s;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a{{"thm4.6", "exp-rate"}};
  return a;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : suites()) n.push_back(s.name);
    return n;
  }();
  return names;
}

std::string canonical_suite(const std::string& name) {
  if (name == "all") return name;
  for (const auto& s : suites()) {
    if (s.name == name) return name;
  }
  if (auto it = aliases().find(name); it != aliases().end()) return it->second;
  std::string known;
  for (const auto& s : suites()) known += " " + s.name;
  throw Error(ErrorKind::param, "unknown suite '" + name + "'; known: all" + known);
}

std::vector<SuiteReport> run_verification(const std::string& suite, const VerifyConfig& config) {
  const std::string canonical = canonical_suite(suite);
  std::vector<SuiteReport> out;
  for (const auto& s : suites()) {
    if (canonical != "all" && canonical != s.name) continue;
    out.push_back({s.name, s.run(config)});
  }
  return out;
}

void to_json(nlohmann::json& j, const CheckResult& c) {
  j = {{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

void to_json(nlohmann::json& j, const SuiteReport& s) {
  j = {{"suite", s.suite}, {"passed", s.passed()}, {"checks", s.checks}};
}

}  // namespace seqderiv
