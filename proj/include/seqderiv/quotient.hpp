#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqderiv/extreal.hpp"
#include "seqderiv/gallery.hpp"
#include "seqderiv/seqgen.hpp"

namespace seqderiv {

/// Quotients whose magnitude exceeds this are reported as ±inf.
inline constexpr double kInfinityThreshold = 1e12;

/// (f(x+h) - f(x)) / h. Throws ErrorKind::param for h == 0 or when x + h
/// rounds to x, ErrorKind::domain when x or x+h is outside the domain.
ExtReal newton_quotient(const GalleryFunction& f, double x, double h,
                        double infinity_threshold = kInfinityThreshold);

/// (f(x+h) - f(x-k)) / (h + k) with h, k > 0.
ExtReal cord_quotient(const GalleryFunction& f, double x, double h, double k,
                      double infinity_threshold = kInfinityThreshold);

/// cord_quotient with k = h.
ExtReal symmetric_quotient(const GalleryFunction& f, double x, double h,
                           double infinity_threshold = kInfinityThreshold);

/// Cord quotient at the origin split as r * right + (1 - r) * left with
/// r = h / (h + k), right = g(h) / h, left = g(-k) / (-k), where
/// g = f - f(0). `cord` is the cord quotient of g, which equals that of f up
/// to rounding.
struct Decomposition {
  double h = 0.0;
  double k = 0.0;
  double r = 0.0;
  double one_minus_r = 0.0;  // k / (h + k), not 1 - r, to keep full precision when h >> k
  ExtReal right_q;
  ExtReal left_q;
  ExtReal cord;
  /// r * right + (1 - r) * left; infinite when either side is.
  ExtReal reconstructed() const;
};

Decomposition decompose(const GalleryFunction& f, double h, double k,
                        double infinity_threshold = kInfinityThreshold);

struct TraceEntry {
  Index n = 0;
  double h = 0.0;
  std::optional<double> k;
  ExtReal value;
};

/// Quotient values recorded along null sequences.
struct QuotientTrace {
  std::string function;
  double x = 0.0;
  std::string h_spec;
  std::optional<std::string> k_spec;
  std::vector<TraceEntry> entries;

  bool is_cord() const noexcept { return k_spec.has_value(); }
  std::vector<ExtReal> values() const;
};

/// Newton quotients (kseq absent) or cord quotients at x for the first N
/// indices of the sequences, starting at their offsets.
QuotientTrace trace(const GalleryFunction& f, double x, const DecaySequence& hseq,
                    const std::optional<DecaySequence>& kseq, Index N,
                    double infinity_threshold = kInfinityThreshold);

/// Trace assembled from precomputed values (entries numbered from 1).
QuotientTrace trace_from_values(std::vector<ExtReal> values, std::string label = "values");

/// CSV with header "n,h,k,value"; empty k column for Newton traces.
std::string to_csv(const QuotientTrace& t);
void to_json(nlohmann::json& j, const QuotientTrace& t);

}  // namespace seqderiv
