#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "seqderiv/extreal.hpp"

namespace gen {

struct Gen {
  explicit Gen(std::uint64_t seed) : engine(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine);
  }
  bool coin(double p = 0.5) { return uniform(0, 1) < p; }
  double log_uniform(double lo_exp, double hi_exp) { return std::pow(10.0, uniform(lo_exp, hi_exp)); }

  seqderiv::ExtReal ext_value() {
    if (coin(0.05)) return seqderiv::ExtReal::neg_inf();
    if (coin(0.05)) return seqderiv::ExtReal::pos_inf();
    return seqderiv::ext(std::round(uniform(-10, 10) * 4) / 4);
  }

  std::pair<std::vector<seqderiv::ExtInterval>, std::vector<seqderiv::ExtReal>> raw_set() {
    std::vector<seqderiv::ExtInterval> ivs;
    std::vector<seqderiv::ExtReal> pts;
    const auto n_iv = integer(0, 3);
    for (std::int64_t i = 0; i < n_iv; ++i) {
      auto a = ext_value(), b = ext_value();
      if (b < a) std::swap(a, b);
      ivs.push_back({a, b});
    }
    for (std::int64_t i = integer(n_iv == 0 ? 1 : 0, 3); i > 0; --i) pts.push_back(ext_value());
    return {ivs, pts};
  }

  seqderiv::ClosedExtSet set() {
    auto [ivs, pts] = raw_set();
    return seqderiv::normalize(std::move(ivs), std::move(pts));
  }

  std::mt19937_64 engine;
};

// Chart images of a set, sampled densely enough that the brute-force
// Hausdorff distance is within `step` of the true one.
inline std::vector<double> chart_samples(const seqderiv::ClosedExtSet& s, double step = 1e-4) {
  std::vector<double> out;
  for (const auto& iv : s.intervals()) {
    const double lo = seqderiv::chart(iv.lo), hi = seqderiv::chart(iv.hi);
    for (double c = lo; c < hi; c += step) out.push_back(c);
    out.push_back(hi);
  }
  for (const auto& p : s.points()) out.push_back(seqderiv::chart(p));
  std::sort(out.begin(), out.end());
  return out;
}

inline double brute_excess(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (double x : a) {
    auto it = std::lower_bound(b.begin(), b.end(), x);
    double best = INFINITY;
    if (it != b.end()) best = *it - x;
    if (it != b.begin()) best = std::min(best, x - *(it - 1));
    worst = std::max(worst, best);
  }
  return worst;
}

inline double brute_hausdorff(const seqderiv::ClosedExtSet& a, const seqderiv::ClosedExtSet& b) {
  const auto sa = chart_samples(a), sb = chart_samples(b);
  return std::max(brute_excess(sa, sb), brute_excess(sb, sa));
}

}  // namespace gen
