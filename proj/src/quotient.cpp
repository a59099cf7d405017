#include "seqderiv/quotient.hpp"

#include <cmath>

#include "seqderiv/error.hpp"

namespace seqderiv {

namespace {

ExtReal to_extended(double q, double threshold, const std::string& where) {
  if (std::isnan(q)) throw Error(ErrorKind::domain, where + ": quotient is NaN");
  if (q > threshold) return ExtReal::pos_inf();
  if (q < -threshold) return ExtReal::neg_inf();
  return ExtReal::from_double(q);
}

void require_resolved_step(double x, double step, const char* what) {
  if (x + step == x) {
    throw Error(ErrorKind::param, std::string(what) + " step " + format_number(step) +
                                      " is below floating resolution at x = " + format_number(x));
  }
}

}  // namespace

ExtReal newton_quotient(const GalleryFunction& f, double x, double h, double infinity_threshold) {
  if (h == 0.0 || !std::isfinite(h)) throw Error(ErrorKind::param, "newton_quotient: h must be nonzero and finite");
  require_resolved_step(x, h, "newton_quotient:");
  const double fx = f(x);
  const double fxh = f(x + h);
  return to_extended((fxh - fx) / h, infinity_threshold, "newton_quotient");
}

ExtReal cord_quotient(const GalleryFunction& f, double x, double h, double k, double infinity_threshold) {
  if (!(h > 0) || !(k > 0) || !std::isfinite(h) || !std::isfinite(k)) {
    throw Error(ErrorKind::param, "cord_quotient: h and k must be positive and finite");
  }
  require_resolved_step(x, h, "cord_quotient: h");
  require_resolved_step(x, -k, "cord_quotient: k");
  const double right = f(x + h);
  const double left = f(x - k);
  return to_extended((right - left) / (h + k), infinity_threshold, "cord_quotient");
}

ExtReal symmetric_quotient(const GalleryFunction& f, double x, double h, double infinity_threshold) {
  return cord_quotient(f, x, h, h, infinity_threshold);
}

ExtReal Decomposition::reconstructed() const {
  if (!right_q.is_finite() || !left_q.is_finite()) {
    // r > 0 and 1 - r > 0: an infinite side dominates; opposite infinities
    // have no defined combination.
    if (!right_q.is_finite() && !left_q.is_finite() && right_q != left_q) {
      throw Error(ErrorKind::domain, "decomposition of opposite infinities");
    }
    return right_q.is_finite() ? left_q : right_q;
  }
  return ExtReal::from_double(r * right_q.value() + one_minus_r * left_q.value());
}

Decomposition decompose(const GalleryFunction& f, double h, double k, double infinity_threshold) {
  if (!(h > 0) || !(k > 0) || !std::isfinite(h) || !std::isfinite(k)) {
    throw Error(ErrorKind::param, "decompose: h and k must be positive and finite");
  }
  require_resolved_step(0.0, h, "decompose: h");
  // Work with g = f - f(0) so that g(0) = 0 exactly.
  const double f0 = f(0.0);
  const double gh = f(h) - f0;
  const double gk = f(-k) - f0;
  Decomposition d;
  d.h = h;
  d.k = k;
  d.r = h / (h + k);
  d.one_minus_r = k / (h + k);
  d.cord = to_extended((gh - gk) / (h + k), infinity_threshold, "decompose");
  d.right_q = to_extended(gh / h, infinity_threshold, "decompose");
  d.left_q = to_extended(gk / -k, infinity_threshold, "decompose");
  return d;
}

std::vector<ExtReal> QuotientTrace::values() const {
  std::vector<ExtReal> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.value);
  return out;
}

QuotientTrace trace(const GalleryFunction& f, double x, const DecaySequence& hseq,
                    const std::optional<DecaySequence>& kseq, Index N, double infinity_threshold) {
  if (N < 1) throw Error(ErrorKind::param, "trace: N must be >= 1");
  QuotientTrace t;
  t.function = f.spec();
  t.x = x;
  t.h_spec = hseq.spec();
  if (kseq) t.k_spec = kseq->spec();
  t.entries.reserve(static_cast<std::size_t>(N));
  for (Index i = 0; i < N; ++i) {
    TraceEntry e;
    e.n = hseq.offset() + i;
    e.h = hseq.term(e.n);
    if (kseq) {
      e.k = kseq->term(kseq->offset() + i);
      e.value = cord_quotient(f, x, e.h, *e.k, infinity_threshold);
    } else {
      e.value = newton_quotient(f, x, e.h, infinity_threshold);
    }
    t.entries.push_back(e);
  }
  return t;
}

QuotientTrace trace_from_values(std::vector<ExtReal> values, std::string label) {
  QuotientTrace t;
  t.function = std::move(label);
  t.h_spec = "n/a";
  t.entries.reserve(values.size());
  Index n = 1;
  for (auto& v : values) t.entries.push_back({n++, 0.0, std::nullopt, v});
  return t;
}

std::string to_csv(const QuotientTrace& t) {
  std::string out = "n,h,k,value\n";
  for (const auto& e : t.entries) {
    out += std::to_string(e.n) + "," + format_number(e.h) + "," + (e.k ? format_number(*e.k) : "") + "," +
           format_number(e.value) + "\n";
  }
  return out;
}

void to_json(nlohmann::json& j, const QuotientTrace& t) {
  j = nlohmann::json::object();
  j["function"] = t.function;
  j["x"] = t.x;
  j["kind"] = t.is_cord() ? "cord" : "newton";
  j["h_seq"] = t.h_spec;
  j["k_seq"] = t.k_spec ? nlohmann::json(*t.k_spec) : nlohmann::json(nullptr);
  auto entries = nlohmann::json::array();
  for (const auto& e : t.entries) {
    entries.push_back({{"n", e.n},
                       {"h", e.h},
                       {"k", e.k ? nlohmann::json(*e.k) : nlohmann::json(nullptr)},
                       {"value", e.value}});
  }
  j["entries"] = std::move(entries);
}

}  // namespace seqderiv
