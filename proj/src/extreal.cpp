#include "seqderiv/extreal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "seqderiv/error.hpp"

namespace seqderiv {

ExtReal ExtReal::from_double(double v) {
  if (std::isnan(v)) throw Error(ErrorKind::param, "NaN is not an extended real");
  if (v == std::numeric_limits<double>::infinity()) return pos_inf();
  if (v == -std::numeric_limits<double>::infinity()) return neg_inf();
  return ExtReal(Kind::finite, v == 0.0 ? 0.0 : v);  // folds -0.0
}

double ExtReal::value() const {
  if (!is_finite()) throw Error(ErrorKind::domain, "infinite value has no finite representation");
  return value_;
}

double ExtReal::to_double() const noexcept {
  switch (kind_) {
    case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
    case Kind::pos_inf: return std::numeric_limits<double>::infinity();
    case Kind::finite: break;
  }
  return value_;
}

std::strong_ordering ExtReal::operator<=>(const ExtReal& other) const noexcept {
  if (kind_ != other.kind_) return kind_ <=> other.kind_;
  if (kind_ != Kind::finite) return std::strong_ordering::equal;
  if (value_ < other.value_) return std::strong_ordering::less;
  if (value_ > other.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string format_number(const ExtReal& x) { return format_number(x.to_double()); }

std::string to_string(const ExtReal& x) { return format_number(x); }

double chart(const ExtReal& x) noexcept {
  switch (x.kind()) {
    case ExtReal::Kind::neg_inf: return -std::numbers::pi / 2;
    case ExtReal::Kind::pos_inf: return std::numbers::pi / 2;
    case ExtReal::Kind::finite: break;
  }
  return std::atan(x.to_double());
}

ExtReal unchart(double c) {
  if (c >= std::numbers::pi / 2) return ExtReal::pos_inf();
  if (c <= -std::numbers::pi / 2) return ExtReal::neg_inf();
  return ExtReal::from_double(std::tan(c));
}

double chart_distance(const ExtReal& x, const ExtReal& y) noexcept {
  return std::abs(chart(x) - chart(y));
}

ClosedExtSet ClosedExtSet::interval(ExtReal lo, ExtReal hi) {
  return normalize({{lo, hi}}, {});
}

ClosedExtSet ClosedExtSet::point(ExtReal p) { return normalize({}, {p}); }

ClosedExtSet ClosedExtSet::from_points(std::vector<ExtReal> points) {
  return normalize({}, std::move(points));
}

bool ClosedExtSet::contains(const ExtReal& x) const noexcept {
  auto it = std::partition_point(intervals_.begin(), intervals_.end(),
                                 [&](const ExtInterval& iv) { return iv.hi < x; });
  if (it != intervals_.end() && it->lo <= x) return true;
  return std::binary_search(points_.begin(), points_.end(), x);
}

ExtReal ClosedExtSet::min() const {
  if (empty()) throw Error(ErrorKind::empty_set, "min of empty set");
  if (intervals_.empty()) return points_.front();
  if (points_.empty()) return intervals_.front().lo;
  return std::min(intervals_.front().lo, points_.front());
}

ExtReal ClosedExtSet::max() const {
  if (empty()) throw Error(ErrorKind::empty_set, "max of empty set");
  if (intervals_.empty()) return points_.back();
  if (points_.empty()) return intervals_.back().hi;
  return std::max(intervals_.back().hi, points_.back());
}

ClosedExtSet normalize(std::vector<ExtInterval> intervals, std::vector<ExtReal> points) {
  ClosedExtSet out;
  for (const auto& iv : intervals) {
    if (iv.lo > iv.hi) {
      throw Error(ErrorKind::invalid_set,
                  "interval [" + to_string(iv.lo) + ", " + to_string(iv.hi) + "] has lo > hi");
    }
    if (iv.lo == iv.hi) points.push_back(iv.lo);
  }
  std::erase_if(intervals, [](const ExtInterval& iv) { return iv.lo == iv.hi; });
  std::sort(intervals.begin(), intervals.end(),
            [](const ExtInterval& a, const ExtInterval& b) { return a.lo < b.lo; });

  // Closed intervals that touch share a point and merge.
  for (const auto& iv : intervals) {
    if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi) {
      out.intervals_.back().hi = std::max(out.intervals_.back().hi, iv.hi);
    } else {
      out.intervals_.push_back(iv);
    }
  }

  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const auto& p : points) {
    auto it = std::partition_point(out.intervals_.begin(), out.intervals_.end(),
                                   [&](const ExtInterval& iv) { return iv.hi < p; });
    if (it != out.intervals_.end() && it->lo <= p) continue;
    out.points_.push_back(p);
  }
  return out;
}

ClosedExtSet normalize(const ClosedExtSet& raw) {
  return normalize(raw.intervals(), raw.points());
}

namespace {

// Components of a set as sorted closed segments of the chart image.
struct Segment {
  double lo;
  double hi;
};

std::vector<Segment> chart_segments(const ClosedExtSet& s) {
  std::vector<Segment> segs;
  segs.reserve(s.intervals().size() + s.points().size());
  for (const auto& iv : s.intervals()) segs.push_back({chart(iv.lo), chart(iv.hi)});
  for (const auto& p : s.points()) segs.push_back({chart(p), chart(p)});
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  return segs;
}

double distance_to(double c, const std::vector<Segment>& segs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segs) {
    double d = c < s.lo ? s.lo - c : (c > s.hi ? c - s.hi : 0.0);
    best = std::min(best, d);
  }
  return best;
}

// sup over `from` of the distance to `to`. The distance function is piecewise
// linear, so its maximum on a segment is attained at an endpoint or at the
// midpoint of a gap of `to`.
double directed_hausdorff(const std::vector<Segment>& from, const std::vector<Segment>& to) {
  double worst = 0.0;
  for (const auto& s : from) {
    worst = std::max({worst, distance_to(s.lo, to), distance_to(s.hi, to)});
    for (std::size_t i = 0; i + 1 < to.size(); ++i) {
      double mid = 0.5 * (to[i].hi + to[i + 1].lo);
      if (mid > s.lo && mid < s.hi) worst = std::max(worst, distance_to(mid, to));
    }
  }
  return worst;
}

}  // namespace

double hausdorff(const ClosedExtSet& a, const ClosedExtSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::empty_set, "hausdorff of empty set");
  auto sa = chart_segments(a);
  auto sb = chart_segments(b);
  return std::max(directed_hausdorff(sa, sb), directed_hausdorff(sb, sa));
}

double excess(const ClosedExtSet& a, const ClosedExtSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::empty_set, "excess of empty set");
  return directed_hausdorff(chart_segments(a), chart_segments(b));
}

double chart_distance(const ExtReal& x, const ClosedExtSet& s) {
  if (s.empty()) throw Error(ErrorKind::empty_set, "distance to empty set");
  return distance_to(chart(x), chart_segments(s));
}

ClosedExtSet convex_hull(const ClosedExtSet& a) {
  if (a.empty()) throw Error(ErrorKind::empty_set, "convex hull of empty set");
  return ClosedExtSet::interval(a.min(), a.max());
}

std::string to_string(const ClosedExtSet& s) {
  std::string out = "{";
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& iv : s.intervals()) {
    sep();
    out += "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]";
  }
  for (const auto& p : s.points()) {
    sep();
    out += to_string(p);
  }
  return out + "}";
}

void to_json(nlohmann::json& j, const ExtReal& x) {
  switch (x.kind()) {
    case ExtReal::Kind::neg_inf: j = "-inf"; return;
    case ExtReal::Kind::pos_inf: j = "+inf"; return;
    case ExtReal::Kind::finite: j = x.value(); return;
  }
}

void from_json(const nlohmann::json& j, ExtReal& x) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "+inf" || s == "inf") x = ExtReal::pos_inf();
    else if (s == "-inf") x = ExtReal::neg_inf();
    else throw Error(ErrorKind::param, "bad extended-real token '" + s + "'");
    return;
  }
  if (!j.is_number()) throw Error(ErrorKind::param, "extended real must be a number or +inf/-inf");
  x = ExtReal::from_double(j.get<double>());
}

void to_json(nlohmann::json& j, const ClosedExtSet& s) {
  j = nlohmann::json::object();
  auto intervals = nlohmann::json::array();
  for (const auto& iv : s.intervals()) intervals.push_back({iv.lo, iv.hi});
  j["intervals"] = std::move(intervals);
  j["points"] = s.points();
}

void from_json(const nlohmann::json& j, ClosedExtSet& s) {
  std::vector<ExtInterval> intervals;
  for (const auto& pair : j.at("intervals")) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorKind::invalid_set, "interval must be a [lo, hi] pair");
    }
    intervals.push_back({pair[0].get<ExtReal>(), pair[1].get<ExtReal>()});
  }
  s = normalize(std::move(intervals), j.at("points").get<std::vector<ExtReal>>());
}

}  // namespace seqderiv
