#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "seqderiv/error.hpp"
#include "seqderiv/extreal.hpp"

using namespace seqderiv;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::param;
}

}  // namespace

TEST_CASE("extreal ordering and conversions") {
  CHECK(ExtReal::neg_inf() < ext(-1e308));
  CHECK(ext(1e308) < ExtReal::pos_inf());
  CHECK(ext(INFINITY) == ExtReal::pos_inf());
  CHECK(ext(-INFINITY) == ExtReal::neg_inf());
  CHECK(ExtReal::pos_inf().to_double() == INFINITY);
  CHECK(kind_of([] { ext(NAN); }) == ErrorKind::param);
  CHECK(kind_of([] { (void)ExtReal::pos_inf().value(); }) == ErrorKind::domain);
}

TEST_CASE("chart is atan with infinite endpoints") {
  CHECK(chart(ext(1.0)) == doctest::Approx(std::numbers::pi / 4));
  CHECK(chart(ExtReal::pos_inf()) == std::numbers::pi / 2);
  CHECK(chart(ExtReal::neg_inf()) == -std::numbers::pi / 2);
  CHECK(unchart(std::numbers::pi / 2) == ExtReal::pos_inf());
  CHECK(unchart(-std::numbers::pi / 2) == ExtReal::neg_inf());
  CHECK(chart_distance(ext(0), ExtReal::pos_inf()) == doctest::Approx(std::numbers::pi / 2));
  gen::Gen g(11);
  for (int t = 0; t < 1000; ++t) {
    const double x = g.uniform(-1e6, 1e6);
    CHECK(unchart(chart(ext(x))).value() == doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("normalize merges, sorts and absorbs") {
  const auto s = normalize({{ext(2), ext(3)}, {ext(0), ext(1)}, {ext(1), ext(2)}}, {ext(2.5), ext(5), ext(5)});
  REQUIRE(s.intervals().size() == 1);
  CHECK(s.intervals()[0] == ExtInterval{ext(0), ext(3)});
  REQUIRE(s.points().size() == 1);
  CHECK(s.points()[0] == ext(5));
  CHECK(normalize({{ext(1), ext(1)}}, {}) == ClosedExtSet::point(ext(1)));
  CHECK(kind_of([] { normalize({{ext(2), ext(1)}}, {}); }) == ErrorKind::invalid_set);
  CHECK(s.min() == ext(0));
  CHECK(s.max() == ext(5));
  CHECK(kind_of([] { (void)ClosedExtSet{}.min(); }) == ErrorKind::empty_set);
}

TEST_CASE("normalize is idempotent and order-independent") {
  gen::Gen g(1);
  for (int t = 0; t < 2000; ++t) {
    auto [ivs, pts] = g.raw_set();
    const auto s = normalize(ivs, pts);
    CHECK(normalize(s) == s);
    std::shuffle(ivs.begin(), ivs.end(), g.engine);
    std::shuffle(pts.begin(), pts.end(), g.engine);
    CHECK(normalize(ivs, pts) == s);
    for (const auto& iv : s.intervals()) CHECK(iv.lo < iv.hi);
    for (const auto& p : s.points()) {
      for (const auto& iv : s.intervals()) CHECK_FALSE((iv.lo <= p && p <= iv.hi));
    }
  }
}

TEST_CASE("hausdorff against the brute-force sampling oracle") {
  CHECK(hausdorff(ClosedExtSet::interval(ext(-1), ext(1)), ClosedExtSet::point(ext(0))) ==
        doctest::Approx(std::numbers::pi / 4));
  CHECK(hausdorff(ClosedExtSet::point(ExtReal::pos_inf()), ClosedExtSet::point(ExtReal::neg_inf())) ==
        doctest::Approx(std::numbers::pi));
  gen::Gen g(2);
  for (int t = 0; t < 300; ++t) {
    const auto a = g.set(), b = g.set();
    CHECK(hausdorff(a, b) == doctest::Approx(gen::brute_hausdorff(a, b)).epsilon(2e-4));
  }
}

TEST_CASE("hausdorff metric axioms") {
  gen::Gen g(3);
  for (int t = 0; t < 1000; ++t) {
    const auto a = g.set(), b = g.set(), c = g.set();
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
    CHECK((hausdorff(a, b) == 0.0) == (a == b));
  }
}

TEST_CASE("excess is the directed distance") {
  const auto big = ClosedExtSet::interval(ext(-1), ext(1));
  const auto small = ClosedExtSet::point(ext(0.5));
  CHECK(excess(small, big) == 0.0);
  CHECK(excess(big, small) == doctest::Approx(std::atan(0.5) + std::numbers::pi / 4));
  gen::Gen g(4);
  for (int t = 0; t < 300; ++t) {
    const auto a = g.set(), b = g.set();
    CHECK(std::max(excess(a, b), excess(b, a)) == doctest::Approx(hausdorff(a, b)));
  }
  CHECK(kind_of([&] { excess(ClosedExtSet{}, big); }) == ErrorKind::empty_set);
}

TEST_CASE("convex hull and containment") {
  const auto s = normalize({{ext(0), ext(1)}}, {ext(-2), ExtReal::pos_inf()});
  CHECK(convex_hull(s) == ClosedExtSet::interval(ext(-2), ExtReal::pos_inf()));
  CHECK(s.contains(ext(0.5)));
  CHECK_FALSE(s.contains(ext(1.5)));
  CHECK(chart_distance(ext(1.5), s) == doctest::Approx(std::atan(1.5) - std::atan(1.0)));
}

TEST_CASE("json and number formatting") {
  const auto s = normalize({{ExtReal::neg_inf(), ext(-1)}}, {ext(0.1)});
  const nlohmann::json j = s;
  CHECK(j.get<ClosedExtSet>() == s);
  CHECK(nlohmann::json(ExtReal::pos_inf()) == "+inf");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(ExtReal::neg_inf()) == "-inf");
  CHECK(to_string(s).find("-inf") != std::string::npos);
}
