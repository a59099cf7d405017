#include "seqderiv/seqgen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seqderiv/error.hpp"
#include "seqderiv/extreal.hpp"
#include "text.hpp"

namespace seqderiv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double eval_polynomial(const Polynomial& poly, double n) {
  if (poly.coefficients.empty()) return poly.a * std::pow(n, poly.m);
  double acc = 0.0;
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) acc = acc * n + *it;
  return acc;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out;
}

}  // namespace

DecaySequence::DecaySequence(Family family, Index offset) : family_(std::move(family)), offset_(offset) {
  if (offset < 1) throw Error(ErrorKind::param, "sequence offset must be >= 1");
  std::visit(overloaded{
                 [](const Harmonic& h) {
                   if (!(h.q > 0)) throw Error(ErrorKind::param, "harmonic: q must be > 0");
                 },
                 [](Polynomial& p) {
                   if (!p.coefficients.empty()) {
                     while (!p.coefficients.empty() && p.coefficients.back() == 0.0) p.coefficients.pop_back();
                     if (p.coefficients.size() < 2) {
                       throw Error(ErrorKind::param, "poly: need a non-constant polynomial");
                     }
                     p.m = static_cast<double>(p.coefficients.size() - 1);
                     p.a = p.coefficients.back();
                   }
                   if (!(p.m > 0) || !(p.a > 0)) throw Error(ErrorKind::param, "poly: m and a must be > 0");
                 },
                 [](const Exponential& e) {
                   if (!(e.a > 1)) throw Error(ErrorKind::param, "exp: base must be > 1");
                 },
                 [](const Explicit& l) {
                   if (l.values.empty()) throw Error(ErrorKind::param, "list: no values");
                   for (std::size_t i = 0; i < l.values.size(); ++i) {
                     if (!(l.values[i] > 0) || !std::isfinite(l.values[i])) {
                       throw Error(ErrorKind::domain, "list: terms must be positive and finite");
                     }
                     if (i > 0 && !(l.values[i] < l.values[i - 1])) {
                       throw Error(ErrorKind::domain, "list: terms must be strictly decreasing");
                     }
                   }
                 },
             },
             family_);
}

DecaySequence DecaySequence::harmonic(double p, double q, Index offset) {
  return DecaySequence(Harmonic{p, q}, offset);
}
DecaySequence DecaySequence::power(double m, double a, Index offset) {
  return DecaySequence(Polynomial{m, a, {}}, offset);
}
DecaySequence DecaySequence::polynomial(std::vector<double> coefficients, Index offset) {
  return DecaySequence(Polynomial{0, 0, std::move(coefficients)}, offset);
}
DecaySequence DecaySequence::exponential(double a, Index offset) {
  return DecaySequence(Exponential{a}, offset);
}
DecaySequence DecaySequence::list(std::vector<double> values, Index offset) {
  return DecaySequence(Explicit{std::move(values)}, offset);
}

DecaySequence DecaySequence::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::param, "sequence spec '" + spec + "' lacks ':'");
  auto kind = std::string(detail::trim(std::string_view(spec).substr(0, colon)));
  auto args = detail::split(std::string_view(spec).substr(colon + 1), ',');
  std::vector<double> nums;
  for (const auto& a : args) nums.push_back(detail::parse_double(a, "sequence parameter"));
  auto want = [&](std::size_t n) {
    if (nums.size() != n) {
      throw Error(ErrorKind::param, "sequence spec '" + spec + "' expects " + std::to_string(n) + " values");
    }
  };
  if (kind == "harmonic") {
    want(2);
    return harmonic(nums[0], nums[1]);
  }
  if (kind == "poly") {
    want(2);
    return power(nums[0], nums[1]);
  }
  if (kind == "polyc") return polynomial(nums);
  if (kind == "exp") {
    want(1);
    return exponential(nums[0]);
  }
  if (kind == "list") return list(nums);
  throw Error(ErrorKind::param, "unknown sequence family '" + kind + "'");
}

Index DecaySequence::last_index() const noexcept {
  if (const auto* l = std::get_if<Explicit>(&family_)) {
    Index base_last = offset_ + static_cast<Index>(l->values.size()) - 1;
    if (!map_) return base_last;
    // Largest n whose image stays in range; the map is increasing.
    Index n = offset_;
    if (map_(n) > base_last) return offset_ - 1;
    while (map_(n + 1) <= base_last) ++n;
    return n;
  }
  return -1;
}

Index DecaySequence::base_index(Index n) const {
  if (n < offset_) {
    throw Error(ErrorKind::index, "index " + std::to_string(n) + " below offset " + std::to_string(offset_));
  }
  return map_ ? map_(n) : n;
}

double DecaySequence::base_term(Index n) const {
  double t = std::visit(overloaded{
                            [&](const Harmonic& h) {
                              double d = h.p + h.q * static_cast<double>(n);
                              if (!(d > 0)) throw Error(ErrorKind::domain, "harmonic: p + q n <= 0");
                              return 1.0 / d;
                            },
                            [&](const Polynomial& p) {
                              double d = eval_polynomial(p, static_cast<double>(n));
                              if (!(d > 0)) throw Error(ErrorKind::domain, "poly: P(n) <= 0");
                              return 1.0 / d;
                            },
                            [&](const Exponential& e) { return std::pow(e.a, -static_cast<double>(n)); },
                            [&](const Explicit& l) {
                              // Index offset of the *underlying* list is the plain offset.
                              auto i = n - offset_;
                              if (i < 0 || i >= static_cast<Index>(l.values.size())) {
                                throw Error(ErrorKind::index, "index " + std::to_string(n) + " past end of list");
                              }
                              return l.values[static_cast<std::size_t>(i)];
                            },
                        },
                        family_);
  if (!(t > 0) || !std::isfinite(t)) {
    throw Error(ErrorKind::domain, "term " + std::to_string(n) + " is not a positive finite double");
  }
  return t;
}

double DecaySequence::term(Index n) const { return base_term(base_index(n)); }

double DecaySequence::base_log_inverse(Index n) const {
  if (const auto* e = std::get_if<Exponential>(&family_)) return static_cast<double>(n) * std::log(e->a);
  if (const auto* h = std::get_if<Harmonic>(&family_)) {
    double d = h->p + h->q * static_cast<double>(n);
    if (!(d > 0)) throw Error(ErrorKind::domain, "harmonic: p + q n <= 0");
    return std::log(d);
  }
  if (const auto* p = std::get_if<Polynomial>(&family_)) {
    if (p->coefficients.empty()) return std::log(p->a) + p->m * std::log(static_cast<double>(n));
    double d = eval_polynomial(*p, static_cast<double>(n));
    if (!(d > 0)) throw Error(ErrorKind::domain, "poly: P(n) <= 0");
    return std::log(d);
  }
  return -std::log(base_term(n));
}

double DecaySequence::log_inverse_term(Index n) const { return base_log_inverse(base_index(n)); }

std::string DecaySequence::spec() const {
  std::string base = std::visit(
      overloaded{
          [](const Harmonic& h) { return "harmonic:" + format_number(h.p) + "," + format_number(h.q); },
          [](const Polynomial& p) {
            if (!p.coefficients.empty()) return "polyc:" + join_numbers(p.coefficients);
            return "poly:" + format_number(p.m) + "," + format_number(p.a);
          },
          [](const Exponential& e) { return "exp:" + format_number(e.a); },
          [](const Explicit& l) { return "list:" + join_numbers(l.values); },
      },
      family_);
  if (map_) base = "sub(" + base + "," + map_label_ + ")";
  return base;
}

std::string DecaySequence::verify(Index horizon, double eps) const {
  Index last = last_index();
  Index end = last >= 0 ? std::min(last, horizon) : horizon;
  if (end < offset_) return "sequence has no terms";
  bool closed_form = !std::holds_alternative<Explicit>(family_);
  double prev = 0.0;
  for (Index n = offset_; n <= end; ++n) {
    // Closed forms are positive by construction; once below the normal range
    // the decay check is satisfied and further terms would underflow.
    if (closed_form && log_inverse_term(n) > 690.0) return {};
    double t = 0.0;
    try {
      t = term(n);
    } catch (const Error& e) {
      return "term " + std::to_string(n) + ": " + e.what();
    }
    if (n > offset_ && !(t < prev)) return "not strictly decreasing at n=" + std::to_string(n);
    prev = t;
  }
  if (!(prev < eps)) {
    return "term(" + std::to_string(end) + ") = " + format_number(prev) + " is not below " + format_number(eps);
  }
  return {};
}

DecaySequence subsequence(const DecaySequence& seq, DecaySequence::IndexMap index_map, Index check_horizon) {
  if (!index_map) throw Error(ErrorKind::invalid_map, "empty index map");
  DecaySequence out = seq;
  auto parent = seq.map_;
  DecaySequence::IndexMap composed =
      parent ? DecaySequence::IndexMap([parent, index_map](Index n) { return parent(index_map(n)); })
             : index_map;

  Index parent_last = seq.last_index();
  Index prev = 0;
  for (Index n = seq.offset(); n <= check_horizon; ++n) {
    Index image = index_map(n);
    if (image < seq.offset()) {
      throw Error(ErrorKind::invalid_map, "index map sends " + std::to_string(n) + " below the offset");
    }
    if (n > seq.offset() && image <= prev) {
      throw Error(ErrorKind::invalid_map,
                  "index map not strictly increasing at n=" + std::to_string(n));
    }
    if (parent_last >= 0 && image > parent_last) break;
    prev = image;
  }
  out.map_ = std::move(composed);
  out.map_label_ = seq.map_label_.empty() ? "map" : seq.map_label_ + "+map";
  return out;
}

RateClass rate_classify(const DecaySequence& seq, Index N, double fit_tol) {
  if (N < 16) throw Error(ErrorKind::param, "rate_classify needs N >= 16");
  Index last = seq.last_index();
  if (last >= 0 && last < N) throw Error(ErrorKind::insufficient_data, "sequence shorter than N");

  Index lo = std::max(seq.offset(), (N + 3) / 4);
  const Index count = std::min<Index>(N - lo + 1, 4096);
  std::vector<double> ln_n, n_val, y;
  for (Index s = 0; s < count; ++s) {
    Index n = lo + (count > 1 ? s * (N - lo) / (count - 1) : 0);
    n_val.push_back(static_cast<double>(n));
    ln_n.push_back(std::log(static_cast<double>(n)));
    y.push_back(seq.log_inverse_term(n));
  }

  struct Fit {
    double slope, intercept, residual;
  };
  auto fit = [&](const std::vector<double>& x) {
    const double k = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
      syy += (y[i] - my) * (y[i] - my);
    }
    Fit f{};
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double r = y[i] - (f.slope * x[i] + f.intercept);
      sse += r * r;
    }
    f.residual = syy > 0 ? std::sqrt(sse / syy) : std::numeric_limits<double>::infinity();
    return f;
  };

  Fit poly = fit(ln_n);
  Fit expo = fit(n_val);
  RateClass rc;
  rc.poly_residual = poly.residual;
  rc.exp_residual = expo.residual;
  bool poly_ok = poly.residual <= fit_tol && poly.slope > 0;
  bool exp_ok = expo.residual <= fit_tol && expo.slope > 0;
  if (poly_ok && !exp_ok) {
    rc.kind = RateClass::Kind::polynomial;
    rc.m = poly.slope;
    rc.a = std::exp(poly.intercept);
  } else if (exp_ok && !poly_ok) {
    rc.kind = RateClass::Kind::exponential;
    rc.a = std::exp(expo.slope);
  }
  return rc;
}

std::string to_string(const RateClass& rc) {
  std::ostringstream os;
  switch (rc.kind) {
    case RateClass::Kind::polynomial: os << "polynomial(m=" << rc.m << ", a=" << rc.a << ")"; break;
    case RateClass::Kind::exponential: os << "exponential(a=" << rc.a << ")"; break;
    case RateClass::Kind::unknown: os << "unknown"; break;
  }
  return os.str();
}

}  // namespace seqderiv
