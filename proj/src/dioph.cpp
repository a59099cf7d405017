#include "seqderiv/dioph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "seqderiv/error.hpp"

namespace seqderiv {

DoubleDouble log(const DoubleDouble& x) {
  if (!(x.hi > 0)) throw Error(ErrorKind::param, "log of a non-positive value");
  int e = 0;
  std::frexp(x.hi, &e);
  DoubleDouble m{std::ldexp(x.hi, -e), std::ldexp(x.lo, -e)};
  if (m.hi < 0.70710678118654752) {
    m = m * DoubleDouble(2.0);
    --e;
  }
  const DoubleDouble z = (m - DoubleDouble(1.0)) / (m + DoubleDouble(1.0));
  const DoubleDouble z2 = z * z;
  DoubleDouble power = z;
  DoubleDouble sum = z;
  for (int i = 1; i < 200; ++i) {
    power = power * z2;
    DoubleDouble term = power / DoubleDouble(2.0 * i + 1.0);
    sum = sum + term;
    if (std::abs(term.hi) < 1e-34 * std::abs(sum.hi)) break;
  }
  return sum * DoubleDouble(2.0) + kLn2 * DoubleDouble(static_cast<double>(e));
}

Precision working_precision() {
  const char* env = std::getenv("SEQDERIV_PRECISION");
  if (env == nullptr || *env == '\0') return Precision::extended;
  std::string v(env);
  if (v == "extended" || v == "dd" || v == "quad") return Precision::extended;
  if (v == "double" || v == "standard") return Precision::standard;
  throw Error(ErrorKind::param, "SEQDERIV_PRECISION must be 'double' or 'extended', got '" + v + "'");
}

std::string to_string(Precision p) { return p == Precision::extended ? "extended" : "double"; }

DoubleDouble log_ratio(double a, double b, Precision precision) {
  if (!(a > 1) || !(b > 1)) throw Error(ErrorKind::param, "log_ratio needs a, b > 1");
  if (precision == Precision::standard) return DoubleDouble(std::log(a) / std::log(b));
  return log(DoubleDouble(a)) / log(DoubleDouble(b));
}

namespace {

using i128 = __int128;
constexpr i128 kConvergentCap = i128{1} << 62;

using boost::multiprecision::cpp_int;

// hi + lo as an exact fraction num / den with den a power of two.
std::pair<cpp_int, cpp_int> exact_fraction(const DoubleDouble& x) {
  int eh = 0, el = 0;
  const double mh = std::frexp(x.hi, &eh);
  const double ml = std::frexp(x.lo, &el);
  const auto ih = static_cast<std::int64_t>(std::ldexp(mh, 53));
  const auto il = static_cast<std::int64_t>(std::ldexp(ml, 53));
  eh -= 53;
  el -= 53;
  const int e = x.lo == 0.0 ? eh : std::min(eh, el);
  cpp_int num = cpp_int(ih) << (eh - e);
  if (x.lo != 0.0) num += cpp_int(il) << (el - e);
  cpp_int den = 1;
  if (e < 0) den <<= -e;
  else num <<= e;
  return {num, den};
}

// Euclid's algorithm on the exact value of the input, so every quotient is
// exact for the given double or double-double.
ContinuedFraction expand(const DoubleDouble& x, int depth, int resolution_bits) {
  if (depth < 1) throw Error(ErrorKind::param, "continued_fraction: depth must be >= 1");
  if (!(x.hi > 0) || !std::isfinite(x.hi)) throw Error(ErrorKind::param, "continued_fraction: alpha must be > 0");
  ContinuedFraction cf;
  auto [num, den] = exact_fraction(x);
  // (p, q) = (p_{k-1}, q_{k-1}), starting from p_{-1} = 1, q_{-1} = 0.
  i128 p_prev = 0, q_prev = 1, p = 1, q = 0;
  const long double q_limit = std::ldexp(1.0L, resolution_bits / 2);
  for (int k = 0; k < depth; ++k) {
    const cpp_int a = num / den;
    if (a >= cpp_int(kConvergentCap)) break;
    const auto ak = static_cast<std::int64_t>(a);
    const i128 p_next = ak * p + p_prev;
    const i128 q_next = ak * q + q_prev;
    if (p_next > kConvergentCap || q_next > kConvergentCap) break;
    if (k > 0 && static_cast<long double>(q_next) > q_limit) break;
    cf.partial_quotients.push_back(ak);
    cf.convergents.push_back({static_cast<std::int64_t>(p_next), static_cast<std::int64_t>(q_next)});
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    cpp_int rem = num - a * den;
    if (rem == 0) {
      cf.terminated = true;
      break;
    }
    num = den;
    den = rem;
  }
  return cf;
}

// i alpha - j - t with j the nearest non-negative integer to i alpha - t.
struct Residual {
  std::int64_t j;
  DoubleDouble value;
};

Residual residual(const DoubleDouble& alpha, std::int64_t i, double t) {
  DoubleDouble s = alpha * DoubleDouble(static_cast<double>(i)) - DoubleDouble(t);
  DoubleDouble j = floor(s + DoubleDouble(0.5));
  double jv = j.hi + j.lo;
  if (jv < 0) {
    j = DoubleDouble(0.0);
    jv = 0;
  }
  return {static_cast<std::int64_t>(jv), s - j};
}

ApproxWitness make_witness(const DoubleDouble& alpha, std::int64_t i, double t, const Residual& r) {
  ApproxWitness w;
  w.i = i;
  w.j = r.j;
  w.alpha = alpha.to_double();
  w.t = t;
  w.achieved = (alpha * DoubleDouble(static_cast<double>(i)) - DoubleDouble(static_cast<double>(r.j))).to_double();
  w.error = std::abs(r.value.to_double());
  return w;
}

}  // namespace

// A zero low word means the value carries only double precision.
ContinuedFraction continued_fraction(const DoubleDouble& alpha, int depth) {
  return expand(alpha, depth, alpha.lo == 0.0 ? 51 : 102);
}

ContinuedFraction continued_fraction(double alpha, int depth) { return expand(DoubleDouble(alpha), depth, 51); }

void to_json(nlohmann::json& j, const ApproxWitness& w) {
  j = {{"i", w.i}, {"j", w.j}, {"achieved", w.achieved}, {"error", w.error}, {"alpha", w.alpha}, {"t", w.t}};
}

std::optional<ApproxWitness> approx_target(const DoubleDouble& alpha, double t, double eps, std::int64_t i_bound) {
  if (!(eps > 0)) throw Error(ErrorKind::param, "approx_target: eps must be > 0");
  if (i_bound < 1) throw Error(ErrorKind::param, "approx_target: i_bound must be >= 1");
  if (!std::isfinite(t)) throw Error(ErrorKind::param, "approx_target: t must be finite");
  if (i_bound > (std::int64_t{1} << 52)) throw Error(ErrorKind::param, "approx_target: i_bound too large");

  // For rational alpha = p/q the residuals repeat with period q once
  // i alpha - t >= -1/2, past which j is no longer clamped at 0.
  std::int64_t limit = i_bound;
  const auto cf = continued_fraction(abs(alpha), 64);
  if (alpha.hi > 0 && cf.terminated && !cf.convergents.empty()) {
    const double start = std::max(0.0, std::ceil((t - 0.5) / alpha.to_double()));
    if (start < static_cast<double>(i_bound)) {
      limit = std::min(limit, static_cast<std::int64_t>(start) + cf.convergents.back().q);
    }
  }
  for (std::int64_t i = 1; i <= limit; ++i) {
    Residual r = residual(alpha, i, t);
    if (std::abs(r.value.hi) < eps) return make_witness(alpha, i, t, r);
  }
  return std::nullopt;
}

std::optional<ApproxWitness> approx_target(double alpha, double t, double eps, std::int64_t i_bound) {
  return approx_target(DoubleDouble(alpha), t, eps, i_bound);
}

std::string to_string(const RationalRelation& r) {
  std::ostringstream os;
  if (r.found) {
    os << "rational(" << r.p << ", " << r.q << ")" << (r.exact ? "" : " [within working precision]");
  } else {
    os << "no_small_relation(bound=" << r.bound << ")";
  }
  return os.str();
}

RationalRelation rational_check(double a, double b, std::int64_t exp_bound, Precision precision) {
  if (!(a > 1) || !(b > 1)) throw Error(ErrorKind::param, "rational_check needs a, b > 1");
  if (exp_bound < 1) throw Error(ErrorKind::param, "rational_check: exp_bound must be >= 1");
  RationalRelation out;
  out.bound = exp_bound;

  const bool integers = a == std::floor(a) && b == std::floor(b) && a < 0x1p53 && b < 0x1p53;
  if (integers) {
    out.exact = true;
    const auto ai = static_cast<std::uint64_t>(a);
    const auto bi = static_cast<std::uint64_t>(b);
    const double ratio = std::log(a) / std::log(b);
    // Smallest q first, so a hit is already in lowest terms.
    for (std::int64_t q = 1; q <= exp_bound; ++q) {
      auto centre = static_cast<std::int64_t>(std::llround(static_cast<double>(q) * ratio));
      for (std::int64_t p = std::max<std::int64_t>(1, centre - 1); p <= std::min(exp_bound, centre + 1); ++p) {
        if (pow(cpp_int(ai), static_cast<unsigned>(q)) == pow(cpp_int(bi), static_cast<unsigned>(p))) {
          out.found = true;
          out.p = p;
          out.q = q;
          return out;
        }
      }
    }
    return out;
  }

  const DoubleDouble alpha = log_ratio(a, b, precision);
  const auto cf = continued_fraction(alpha, 64);
  const double tol = precision == Precision::extended ? 1e-28 : 1e-13;
  for (const auto& c : cf.convergents) {
    if (c.q > exp_bound || c.p > exp_bound) break;
    DoubleDouble diff = alpha - DoubleDouble(static_cast<double>(c.p)) / DoubleDouble(static_cast<double>(c.q));
    if (c.p >= 1 && std::abs(diff.to_double()) <= tol * std::max(1.0, alpha.hi)) {
      out.found = true;
      out.p = c.p;
      out.q = c.q;
      return out;
    }
  }
  return out;
}

}  // namespace seqderiv
