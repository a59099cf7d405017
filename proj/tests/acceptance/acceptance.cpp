// One line per acceptance criterion: "PASS|FAIL <n> <name> (<seconds>s) <detail>".
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "seqderiv/cli.hpp"
#include "seqderiv/dioph.hpp"
#include "seqderiv/extreal.hpp"
#include "seqderiv/gallery.hpp"
#include "seqderiv/limitset.hpp"
#include "seqderiv/quotient.hpp"
#include "seqderiv/seqgen.hpp"
#include "seqderiv/verify.hpp"

using namespace seqderiv;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome suite(const std::string& name) {
  const auto reports = run_verification(name, VerifyConfig{});
  Outcome o{true, ""};
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      o.passed = o.passed && c.passed;
      if (!c.passed) o.detail += "[" + c.name + ": " + c.detail + "] ";
    }
  }
  return o;
}

Outcome both(Outcome a, const Outcome& b) {
  a.passed = a.passed && b.passed;
  if (!b.detail.empty()) a.detail += (a.detail.empty() ? "" : "; ") + b.detail;
  return a;
}

// Independent of the suite: symmetric pairs h = k, compared against the
// host cosine.
Outcome sin_symmetric() {
  const auto f = make_sin();
  double worst = 0.0;
  for (double h = 1e-7; h > 1e-9; h *= 0.8) worst = std::max(worst, std::abs(symmetric_quotient(f, 0.3, h).to_double() - std::cos(0.3)));
  return {worst <= 1e-6, "symmetric max_error=" + format_number(worst)};
}

Outcome abs_direct() {
  const auto f = make_abs();
  int ok = 0;
  for (int s = -10; s <= 10; ++s) {
    const double K = s / 10.0;
    const auto p = solve_target(f, 0.0, K, 1e-9, SamplingBudget{.samples = 20'000});
    // Exact cord quotient of |x| is (h - k) / (h + k).
    const double exact = (p.h - p.k) / (p.h + p.k);
    if (std::abs(exact - K) <= 1e-9 + 1e-15) ++ok;
  }
  return {ok == 21, "closed-form recheck " + std::to_string(ok) + "/21"};
}

Outcome sine_direct() {
  const auto est = estimate_secant_set(make_sine_envelope(-1, 2), 0.0, Side::right, SamplingBudget{});
  const double d = hausdorff(est.set, ClosedExtSet::interval(ext(-1), ext(2)));
  return {d <= 0.05, "estimate=" + to_string(est.set) + " hausdorff=" + format_number(d)};
}

Outcome poly_direct() {
  const auto p = predict_poly(1, 3, 2, 1, 0, 1, 1);
  return {p.weights.front().r == 0.75, "r(1,1)=" + format_number(p.weights.front().r)};
}

Outcome exp_gap() {
  const auto f = make_two_slope(1, 0, DecaySequence::exponential(2), DecaySequence::exponential(4));
  const auto est = estimate_cord_set(f, 0.0, SamplingBudget{});
  const double lo = 1.0 / 3 + 1e-3, hi = 0.5 - 1e-3;
  bool clean = est.set.intervals().empty();
  for (const auto& p : est.set.points()) {
    const double v = p.to_double();
    clean = clean && !(v > lo && v < hi);
    double best = std::min(std::abs(v), std::abs(v - 1));
    for (int t = -400; t <= 400; ++t) best = std::min(best, std::abs(v - 1 / (1 + std::pow(2.0, t))));
    clean = clean && best <= 1e-6;
  }
  return {clean, "lattice and gap (1/3, 1/2) recheck on " + to_string(est.set)};
}

Outcome incommensurable() {
  const auto w = exp_witness(2, 3, 1, 0, 0.4, 1e-3, 10'000);
  if (!w) return {false, "no witness"};
  // Limit of the cord quotient along (2^-(i n), 3^-(j n)) in log space:
  // r = 1 / (1 + 2^i / 3^j).
  const double lr = w->approx.i * std::log(2.0) - w->approx.j * std::log(3.0);
  const double limit = 1 / (1 + std::exp(lr));
  return {w->approx.i <= 10'000 && std::abs(limit - 0.4) <= 1e-3,
          "i=" + std::to_string(w->approx.i) + " j=" + std::to_string(w->approx.j) + " limit=" + format_number(limit)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "differentiable control", 1, [] { return both(suite("differentiable"), sin_symmetric()); }},
      {2, "abs cord set", 5, [] { return both(suite("abs-cord"), abs_direct()); }},
      {3, "sine envelope secant interval", 10, [] { return both(suite("sine-interval"), sine_direct()); }},
      {4, "secant set inside cord set", 60, [] { return suite("inclusion"); }},
      {5, "polynomial rates", 10, [] { return both(suite("poly-rate"), poly_direct()); }},
      {6, "exponential rates, commensurable", 5, [] { return both(suite("exp-rate"), exp_gap()); }},
      {7, "exponential rates, incommensurable", 1, [] {
         VerifyConfig c;
         c.a = 2;
         c.b = 3;
         c.target = 0.4;
         const auto r = run_verification("exp-rate", c);
         Outcome o{r.front().passed(), r.front().passed() ? "" : r.front().checks.back().detail};
         return both(o, incommensurable());
       }},
      {8, "weierstrass unboundedness", 30, [] { return suite("weierstrass"); }},
      {9, "kernel properties", 5, [] { return suite("kernel"); }},
      {10, "reproducibility", 1e9, [] {
         std::ostringstream a, b, err;
         const int ra = run({"verify", "--suite", "all", "--seed", "1"}, a, err);
         const int rb = run({"verify", "--suite", "all", "--seed", "1"}, b, err);
         return Outcome{ra == rb && a.str() == b.str() && !a.str().empty(),
                        "exit=" + std::to_string(ra) + "/" + std::to_string(rb) + " bytes=" + std::to_string(a.str().size())};
       }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.limit_s;
    const bool pass = o.passed && in_time;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS " : "FAIL ") << c.id << " " << c.name << " (" << format_number(std::round(s * 1000) / 1000)
              << "s" << (in_time ? "" : " over " + format_number(c.limit_s) + "s limit") << ")"
              << (o.detail.empty() ? "" : " " + o.detail) << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
