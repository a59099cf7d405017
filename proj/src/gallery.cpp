#include "seqderiv/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "seqderiv/error.hpp"
#include "text.hpp"

namespace seqderiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Index kMaxSampleIndex = Index{1} << 40;

// Largest n in [offset, cap] with log(1/term(n)) below `limit`; offset - 1 if
// none. log_inverse_term is increasing along a decay sequence.
Index last_normal_index(const DecaySequence& s, double limit) {
  Index cap = s.last_index() >= 0 ? s.last_index() : kMaxSampleIndex;
  if (s.log_inverse_term(s.offset()) >= limit) return s.offset() - 1;
  Index lo = s.offset(), hi = cap;
  if (s.log_inverse_term(hi) < limit) return hi;
  while (hi - lo > 1) {
    Index mid = lo + (hi - lo) / 2;
    (s.log_inverse_term(mid) < limit ? lo : hi) = mid;
  }
  return lo;
}

std::optional<Index> find_term(const DecaySequence& s, Index last, double x) {
  if (!(x > 0) || last < s.offset()) return std::nullopt;
  Index lo = s.offset(), hi = last;
  // Terms decrease: find the first n with term(n) <= x.
  if (s.term(lo) < x || s.term(hi) > x) return std::nullopt;
  while (lo < hi) {
    Index mid = lo + (hi - lo) / 2;
    if (s.term(mid) <= x) hi = mid;
    else lo = mid + 1;
  }
  if (s.term(lo) == x) return lo;
  return std::nullopt;
}

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::domain, std::string(what) + ": x = " + format_number(x) + " outside [0, 1]");
  }
}

}  // namespace

DiscreteSamples::DiscreteSamples(DecaySequence h_seq, DecaySequence k_seq)
    : h(std::move(h_seq)), k(std::move(k_seq)), h_last(last_normal_index(h, 700.0)), k_last(last_normal_index(k, 700.0)) {}

std::optional<Index> DiscreteSamples::right_index(double x) const { return find_term(h, h_last, x); }
std::optional<Index> DiscreteSamples::left_index(double x) const { return find_term(k, k_last, -x); }

bool DiscreteSamples::contains(double x) const {
  if (x == 0.0) return true;
  return x > 0 ? right_index(x).has_value() : left_index(x).has_value();
}

Domain Domain::interval(double lo, double hi) {
  if (!(lo < hi)) throw Error(ErrorKind::param, "domain interval must have lo < hi");
  Domain d;
  d.lo = lo;
  d.hi = hi;
  return d;
}

Domain Domain::real_line() { return interval(-kInf, kInf); }

Domain Domain::discrete(DecaySequence h, DecaySequence k) {
  Domain d;
  d.kind = Kind::discrete;
  d.samples = std::make_shared<const DiscreteSamples>(std::move(h), std::move(k));
  return d;
}

bool Domain::contains(double x) const {
  if (std::isnan(x)) return false;
  if (kind == Kind::interval) return x >= lo && x <= hi;
  return samples->contains(x);
}

std::string Domain::describe() const {
  if (kind == Kind::interval) return "[" + format_number(lo) + ", " + format_number(hi) + "]";
  return "{0} u {h_n: " + samples->h.spec() + "} u {-k_n: " + samples->k.spec() + "}";
}

GalleryFunction::GalleryFunction(std::string name, std::string spec, Domain domain, Eval eval,
                                 nlohmann::json params, bool continuous)
    : name_(std::move(name)),
      spec_(std::move(spec)),
      domain_(std::move(domain)),
      eval_(std::move(eval)),
      params_(std::move(params)),
      continuous_(continuous) {}

double GalleryFunction::operator()(double x) const {
  if (!domain_.contains(x)) {
    throw Error(ErrorKind::domain, name_ + ": x = " + format_number(x) + " outside domain " + domain_.describe());
  }
  return eval_(x);
}

// ---------------------------------------------------------------------------

double cos_pi(double r) {
  r = std::fmod(std::abs(r), 2.0);
  if (r > 1.0) r = 2.0 - r;
  double sign = 1.0;
  if (r > 0.5) {
    r = 1.0 - r;
    sign = -1.0;
  }
  if (r > 0.25) return sign * std::sin(std::numbers::pi * (0.5 - r));
  return sign * std::cos(std::numbers::pi * r);
}

int weierstrass_last_term(double a, double tol) {
  if (!(a > 0 && a < 1)) throw Error(ErrorKind::param, "weierstrass: a must lie in (0, 1)");
  if (!(tol > 0)) throw Error(ErrorKind::param, "weierstrass: tol must be > 0");
  int n = 0;
  double tail = a / (1.0 - a);  // a^(n+1) / (1 - a)
  while (tail > tol) {
    tail *= a;
    ++n;
  }
  return n;
}

bool weierstrass_condition(double a, std::int64_t b) {
  return a * static_cast<double>(b) > 1.0 + 1.5 * std::numbers::pi;
}

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) comp_ += (sum_ - t) + v;
    else comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

int bit_width_u64(std::uint64_t v) { return v == 0 ? 0 : 64 - __builtin_clzll(v); }

// Phases r_n = (b^n x mod 2) in [0, 2) for n = 0..last, computed exactly for the
// dyadic rational x = M 2^-K.
template <class Visit>
void reduced_phases(std::uint64_t M, int K, std::uint64_t b, int last, Visit&& visit) {
  const int mod_bits = K + 1;
  if (mod_bits + bit_width_u64(b) <= 127) {
    using u128 = unsigned __int128;
    const u128 mask = (mod_bits >= 128) ? ~u128{0} : ((u128{1} << mod_bits) - 1);
    u128 p = u128{M} & mask;
    for (int n = 0; n <= last; ++n) {
      visit(n, std::ldexp(static_cast<double>(p), -K));
      p = (p * b) & mask;
    }
    return;
  }
  using boost::multiprecision::cpp_int;
  const cpp_int mask = (cpp_int(1) << mod_bits) - 1;
  cpp_int p = cpp_int(M) & mask;
  for (int n = 0; n <= last; ++n) {
    // Leading 64 bits suffice for the double conversion.
    int bits = static_cast<int>(msb(p)) + 1;
    double r = 0.0;
    if (p != 0) {
      int shift = std::max(0, bits - 64);
      r = std::ldexp(static_cast<double>(static_cast<std::uint64_t>(p >> shift)), shift - K);
    }
    visit(n, r);
    p = (p * b) & mask;
  }
}

}  // namespace

double weierstrass(double a, std::int64_t b, double x, double tol) {
  if (b <= 0 || b % 2 == 0) throw Error(ErrorKind::param, "weierstrass: b must be an odd positive integer");
  if (!std::isfinite(x)) throw Error(ErrorKind::domain, "weierstrass: x must be finite");
  const int last = weierstrass_last_term(a, tol);

  CompensatedSum sum;
  double weight = 1.0;
  auto add_term = [&](int, double phase) {
    sum.add(weight * cos_pi(phase));
    weight *= a;
  };

  double ax = std::abs(x);  // W is even
  if (ax == 0.0) {
    for (int n = 0; n <= last; ++n) add_term(n, 0.0);
    return sum.value();
  }
  int e = 0;
  double mant = std::frexp(ax, &e);
  auto M = static_cast<std::uint64_t>(std::ldexp(mant, 53));
  int K = 53 - e;  // ax = M 2^-K
  while (K > 0 && (M & 1u) == 0) {
    M >>= 1;
    --K;
  }
  if (K <= 0) {
    // Integer x: b^n x has the parity of x.
    double phase = (K == 0 && (M & 1u)) ? 1.0 : 0.0;
    for (int n = 0; n <= last; ++n) add_term(n, phase);
    return sum.value();
  }
  reduced_phases(M, K, static_cast<std::uint64_t>(b), last, add_term);
  return sum.value();
}

double sine_envelope(double a, double b, double x) {
  if (!(a < b)) throw Error(ErrorKind::param, "sine_envelope: need a < b");
  require_unit_interval(x, "sine_envelope");
  if (x == 0.0) return 0.0;
  const double s = std::sin(1.0 / x);
  if (std::abs(a) <= std::abs(b)) return b * s >= a ? b * x * s : a * x;
  return b * s >= a ? a * x * s : b * x;
}

double sqrt_sin(double x) {
  require_unit_interval(x, "sqrt_sin");
  if (x == 0.0) return 0.0;
  return std::sqrt(x) * std::sin(1.0 / x);
}

double glued(double a, double b, double c, double d, double x) {
  if (!(c < d)) throw Error(ErrorKind::param, "glued: need c < d");
  if (!(x >= -1.0 && x <= 1.0)) throw Error(ErrorKind::domain, "glued: x outside [-1, 1]");
  return x >= 0 ? sine_envelope(a, b, x) : sine_envelope(-d, -c, -x);
}

double slope_exact_value(double slope, double x) {
  const double v = slope * x;
  if (x == 0.0 || v / x == slope) return v;
  double up = v, down = v;
  for (int i = 0; i < 4; ++i) {
    up = std::nextafter(up, kInf);
    if (up / x == slope) return up;
    down = std::nextafter(down, -kInf);
    if (down / x == slope) return down;
  }
  return v;
}

// ---------------------------------------------------------------------------

GalleryFunction make_weierstrass(double a, std::int64_t b, double tol) {
  weierstrass_last_term(a, tol);  // validates a, tol
  if (b <= 0 || b % 2 == 0) throw Error(ErrorKind::param, "weierstrass: b must be an odd positive integer");
  nlohmann::json params = {{"a", a}, {"b", b}, {"tol", tol}, {"condition_ab", weierstrass_condition(a, b)}};
  return GalleryFunction("weierstrass",
                         "weierstrass:a=" + format_number(a) + ",b=" + std::to_string(b) + ",tol=" + format_number(tol),
                         Domain::real_line(), [a, b, tol](double x) { return weierstrass(a, b, x, tol); },
                         std::move(params), true);
}

GalleryFunction make_sine_envelope(double a, double b) {
  if (!(a < b)) throw Error(ErrorKind::param, "sine_envelope: need a < b");
  return GalleryFunction("sine_envelope", "sine_envelope:a=" + format_number(a) + ",b=" + format_number(b),
                         Domain::interval(0.0, 1.0), [a, b](double x) { return sine_envelope(a, b, x); },
                         {{"a", a}, {"b", b}, {"branch", std::abs(a) <= std::abs(b) ? "b-envelope" : "a-envelope"}},
                         true);
}

GalleryFunction make_sqrt_sin() {
  return GalleryFunction("sqrt_sin", "sqrt_sin", Domain::interval(0.0, 1.0), sqrt_sin, nlohmann::json::object(), true);
}

GalleryFunction make_glued(double a, double b, double c, double d) {
  if (!(a < b) || !(c < d)) throw Error(ErrorKind::param, "glued_g: need a < b and c < d");
  return GalleryFunction("glued_g",
                         "glued_g:a=" + format_number(a) + ",b=" + format_number(b) + ",c=" + format_number(c) +
                             ",d=" + format_number(d),
                         Domain::interval(-1.0, 1.0), [a, b, c, d](double x) { return glued(a, b, c, d, x); },
                         {{"a", a}, {"b", b}, {"c", c}, {"d", d}}, true);
}

GalleryFunction make_abs() {
  return GalleryFunction("abs", "abs", Domain::real_line(), [](double x) { return std::abs(x); },
                         nlohmann::json::object(), true);
}

GalleryFunction make_square() {
  return GalleryFunction("square", "square", Domain::real_line(), [](double x) { return x * x; },
                         nlohmann::json::object(), true);
}

GalleryFunction make_cube() {
  return GalleryFunction("cube", "cube", Domain::real_line(), [](double x) { return x * x * x; },
                         nlohmann::json::object(), true);
}

GalleryFunction make_sin() {
  return GalleryFunction("sin", "sin", Domain::real_line(), [](double x) { return std::sin(x); },
                         nlohmann::json::object(), true);
}

GalleryFunction make_sqrt() {
  return GalleryFunction("sqrt", "sqrt", Domain::interval(0.0, kInf), [](double x) { return std::sqrt(x); },
                         nlohmann::json::object(), true);
}

GalleryFunction make_two_slope(double R, double L, DecaySequence h, DecaySequence k) {
  if (!std::isfinite(R) || !std::isfinite(L)) throw Error(ErrorKind::param, "two_slope: R and L must be finite");
  std::string spec = "two_slope:R=" + format_number(R) + ",L=" + format_number(L) + ",h=" + h.spec() + ",k=" + k.spec();
  nlohmann::json params = {{"R", R}, {"L", L}, {"h", h.spec()}, {"k", k.spec()}};
  auto domain = Domain::discrete(std::move(h), std::move(k));
  return GalleryFunction("two_slope", std::move(spec), std::move(domain),
                         [R, L](double x) {
                           if (x == 0.0) return 0.0;
                           return slope_exact_value(x > 0 ? R : L, x);
                         },
                         std::move(params), false);
}

DenseSlopeCell dense_slope_cell(double x) {
  if (!(x > 0.0 && x <= 1.0)) throw Error(ErrorKind::domain, "dense_slope: cell lookup needs x in (0, 1]");
  if (1.0 / x >= 0x1p52) throw Error(ErrorKind::domain, "dense_slope: x below partition resolution");
  auto n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(1.0 / x)));
  while (n > 1 && x > 1.0 / static_cast<double>(n)) --n;
  while (x <= 1.0 / static_cast<double>(n + 1)) ++n;
  const double lo = 1.0 / static_cast<double>(n + 1);
  const double hi = 1.0 / static_cast<double>(n);
  const double width = (hi - lo) / static_cast<double>(n + 1);
  auto k = static_cast<std::int64_t>(std::ceil((x - lo) / width));
  k = std::clamp<std::int64_t>(k, 1, n + 1);
  return {n, k};
}

GalleryFunction make_dense_slope(const ClosedExtSet& target, std::vector<double> slopes) {
  if (slopes.empty()) throw Error(ErrorKind::param, "dense_slope: empty slope sequence");
  if (target.empty()) throw Error(ErrorKind::param, "dense_slope: target set must be non-empty");
  for (double s : slopes) {
    if (!std::isfinite(s)) throw Error(ErrorKind::param, "dense_slope: slopes must be finite reals");
  }
  std::string spec = "dense_slope:slopes=";
  for (std::size_t i = 0; i < slopes.size(); ++i) spec += (i ? ";" : "") + format_number(slopes[i]);
  nlohmann::json params = {{"slopes", slopes}, {"target", target}, {"partition", "xi_n = 1/n, n+1 equal cells"}};
  return GalleryFunction("dense_slope", std::move(spec), Domain::interval(0.0, 1.0),
                         [slopes = std::move(slopes)](double x) {
                           if (x == 0.0) return 0.0;
                           auto cell = dense_slope_cell(x);
                           if (!cell.is_slope_cell()) return std::sqrt(x);
                           auto idx = static_cast<std::size_t>((cell.cell - 1) % static_cast<std::int64_t>(slopes.size()));
                           return slope_exact_value(slopes[idx], x);
                         },
                         std::move(params), false);
}

GalleryFunction shifted(const GalleryFunction& f, double x) {
  const double fx = f(x);
  Domain d = f.domain();
  if (d.kind == Domain::Kind::interval) {
    d = Domain::interval(d.lo - x, d.hi - x);
  } else if (x != 0.0) {
    throw Error(ErrorKind::param, "shifted: discrete domains are anchored at 0");
  }
  nlohmann::json params = {{"base", f.spec()}, {"x", x}, {"f(x)", fx}};
  return GalleryFunction("shifted(" + f.name() + ")", f.spec() + "@" + format_number(x), std::move(d),
                         [f, x, fx](double t) { return f(t + x) - fx; }, std::move(params), f.continuous());
}

// ---------------------------------------------------------------------------

namespace {

// "name:k=v,k=v"; a comma-separated piece without '=' continues the previous
// value, so nested sequence specs such as h=harmonic:0,1 survive.
std::map<std::string, std::string> parse_params(std::string_view body) {
  std::map<std::string, std::string> out;
  std::string last_key;
  for (auto& piece : detail::split(body, ',')) {
    if (piece.empty()) continue;
    auto eq = piece.find('=');
    if (eq == std::string::npos) {
      if (last_key.empty()) throw Error(ErrorKind::param, "malformed parameter '" + piece + "'");
      out[last_key] += "," + piece;
      continue;
    }
    last_key = std::string(detail::trim(std::string_view(piece).substr(0, eq)));
    out[last_key] = std::string(detail::trim(std::string_view(piece).substr(eq + 1)));
  }
  return out;
}

class ParamReader {
 public:
  ParamReader(std::string fn, std::map<std::string, std::string> p) : fn_(std::move(fn)), p_(std::move(p)) {}

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto it = p_.find(key);
    if (it == p_.end()) {
      if (fallback) return *fallback;
      throw Error(ErrorKind::param, fn_ + ": missing parameter '" + key + "'");
    }
    auto v = detail::parse_double(it->second, key);
    p_.erase(it);
    return v;
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    auto it = p_.find(key);
    if (it == p_.end()) {
      if (fallback) return *fallback;
      throw Error(ErrorKind::param, fn_ + ": missing parameter '" + key + "'");
    }
    auto v = it->second;
    p_.erase(it);
    return v;
  }

  void done() const {
    if (!p_.empty()) throw Error(ErrorKind::param, fn_ + ": unknown parameter '" + p_.begin()->first + "'");
  }

 private:
  std::string fn_;
  std::map<std::string, std::string> p_;
};

}  // namespace

GalleryFunction make_function(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name(detail::trim(std::string_view(spec).substr(0, colon)));
  ParamReader r(name, colon == std::string::npos ? std::map<std::string, std::string>{}
                                                 : parse_params(std::string_view(spec).substr(colon + 1)));
  auto finish = [&](GalleryFunction f) {
    r.done();
    return f;
  };

  if (name == "weierstrass") {
    double a = r.number("a", 0.5);
    double b = r.number("b", 13);
    if (b != std::floor(b)) throw Error(ErrorKind::param, "weierstrass: b must be an integer");
    double tol = r.number("tol", 1e-16);
    return finish(make_weierstrass(a, static_cast<std::int64_t>(b), tol));
  }
  if (name == "sine_envelope") {
    double a = r.number("a");
    double b = r.number("b");
    return finish(make_sine_envelope(a, b));
  }
  if (name == "glued_g") {
    double a = r.number("a"), b = r.number("b"), c = r.number("c"), d = r.number("d");
    return finish(make_glued(a, b, c, d));
  }
  if (name == "two_slope") {
    double R = r.number("R");
    double L = r.number("L");
    auto h = DecaySequence::parse(r.text("h"));
    auto k = DecaySequence::parse(r.text("k"));
    return finish(make_two_slope(R, L, std::move(h), std::move(k)));
  }
  if (name == "dense_slope") {
    std::vector<double> slopes;
    for (const auto& s : detail::split(r.text("slopes"), ';')) slopes.push_back(detail::parse_double(s, "slope"));
    std::vector<ExtReal> pts;
    for (double s : slopes) pts.push_back(ext(s));
    pts.push_back(ExtReal::pos_inf());
    return finish(make_dense_slope(ClosedExtSet::from_points(std::move(pts)), std::move(slopes)));
  }
  if (name == "sqrt_sin") return finish(make_sqrt_sin());
  if (name == "abs") return finish(make_abs());
  if (name == "square") return finish(make_square());
  if (name == "cube") return finish(make_cube());
  if (name == "sin") return finish(make_sin());
  if (name == "sqrt") return finish(make_sqrt());
  throw Error(ErrorKind::param, "unknown gallery function '" + name + "'");
}

const std::vector<GalleryEntry>& gallery_catalog() {
  static const std::vector<GalleryEntry> catalog = {
      {"weierstrass", "weierstrass:a=0.5,b=13", "sum a^n cos(b^n pi x), 0<a<1, b odd", true},
      {"sine_envelope", "sine_envelope:a=-1,b=2", "right secant set [a,b] at 0, domain [0,1]", true},
      {"glued_g", "glued_g:a=-1,b=2,c=-3,d=1", "sine_envelope(a,b) right, mirrored (c,d) left, domain [-1,1]", true},
      {"sqrt_sin", "sqrt_sin", "sqrt(x) sin(1/x) on [0,1]", true},
      {"abs", "abs", "|x|", true},
      {"square", "square", "x^2", true},
      {"cube", "cube", "x^3", true},
      {"sin", "sin", "sin x", true},
      {"sqrt", "sqrt", "sqrt(x) on [0,inf)", true},
      {"two_slope", "two_slope:R=1,L=0,h=exp:2,k=exp:4", "discrete: f(h_n)=R h_n, f(-k_n)=-L k_n", false},
      {"dense_slope", "dense_slope:slopes=0;0.5;1", "piecewise slopes a_k x with sqrt(x) cells, domain [0,1]", false},
  };
  return catalog;
}

}  // namespace seqderiv
