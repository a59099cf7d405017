#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "seqderiv/error.hpp"
#include "seqderiv/seqgen.hpp"

using namespace seqderiv;

namespace {

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::param;
}

}  // namespace

TEST_CASE("closed-form terms") {
  CHECK(DecaySequence::harmonic(0, 1).term(5) == 0.2);
  CHECK(DecaySequence::exponential(2).term(3) == 0.125);
  CHECK(DecaySequence::polynomial({0, 1, 1}).term(10) == doctest::Approx(1.0 / 110).scale(0));
  CHECK(DecaySequence::power(2, 3).term(2) == doctest::Approx(1.0 / 12).scale(0));
  CHECK(DecaySequence::list({0.5, 0.25}).term(2) == 0.25);
}

TEST_CASE("index and domain errors") {
  CHECK(kind_of([] { (void)DecaySequence::harmonic(0, 1).term(0); }) == ErrorKind::index);
  CHECK(kind_of([] { (void)DecaySequence::list({0.5}).term(2); }) == ErrorKind::index);
  CHECK(kind_of([] { (void)DecaySequence::harmonic(-10, 1).term(3); }) == ErrorKind::domain);
  CHECK(kind_of([] { (void)DecaySequence::exponential(2).term(5000); }) == ErrorKind::domain);
}

TEST_CASE("log_inverse_term survives underflow") {
  const auto e = DecaySequence::exponential(2);
  CHECK(e.log_inverse_term(5000) == doctest::Approx(5000 * std::log(2.0)));
  gen::Gen g(5);
  const auto p = DecaySequence::power(2, 3);
  for (int t = 0; t < 200; ++t) {
    const Index n = g.integer(1, 1'000'000);
    CHECK(p.log_inverse_term(n) == doctest::Approx(-std::log(p.term(n))));
  }
}

TEST_CASE("parse round-trips") {
  for (const std::string s : {"harmonic:0,1", "poly:2,3", "exp:2", "list:0.5,0.25,0.125"}) {
    const auto seq = DecaySequence::parse(s);
    CHECK(DecaySequence::parse(seq.spec()).term(1) == seq.term(1));
    CHECK(DecaySequence::parse(seq.spec()).spec() == seq.spec());
  }
  CHECK(kind_of([] { DecaySequence::parse("nosuch:1"); }) == ErrorKind::param);
  CHECK(kind_of([] { DecaySequence::parse("exp:"); }) == ErrorKind::param);
}

TEST_CASE("verify and list validation") {
  CHECK(DecaySequence::harmonic(0, 1).verify().empty());
  CHECK_FALSE(DecaySequence::list({0.5, 0.25, 0.125}).verify(3, 1e-3).empty());
  CHECK_THROWS_AS(DecaySequence::list({0.5, 0.5, 0.1}), Error);
}

TEST_CASE("subsequence composes index maps") {
  const auto h = DecaySequence::harmonic(0, 1);
  const auto even = subsequence(h, [](Index n) { return 2 * n; });
  CHECK(even.term(7) == h.term(14));
  CHECK(even.is_subsequence());
  const auto id = subsequence(h, [](Index n) { return n; });
  for (Index n = 1; n < 100; ++n) CHECK(id.term(n) == h.term(n));
  const auto twice = subsequence(even, [](Index n) { return n * n; });
  CHECK(twice.term(3) == h.term(18));
  CHECK(kind_of([&] { subsequence(h, [](Index n) { return n < 5 ? n : Index{5}; }); }) == ErrorKind::invalid_map);
}

TEST_CASE("subsequence terms stay decreasing (property)") {
  gen::Gen g(6);
  for (int t = 0; t < 100; ++t) {
    const Index c = g.integer(1, 5), d = g.integer(0, 10);
    const auto s = subsequence(DecaySequence::power(g.uniform(0.5, 3), g.uniform(0.5, 4)),
                               [c, d](Index n) { return c * n + d; });
    for (Index n = 1; n < 200; ++n) CHECK(s.term(n + 1) < s.term(n));
  }
}

TEST_CASE("rate classification") {
  auto rc = rate_classify(DecaySequence::power(2, 1), 10'000);
  CHECK(rc.kind == RateClass::Kind::polynomial);
  CHECK(rc.m == doctest::Approx(2).epsilon(1e-3));
  CHECK(rc.a == doctest::Approx(1).epsilon(1e-2));
  rc = rate_classify(DecaySequence::exponential(2), 10'000);
  CHECK(rc.kind == RateClass::Kind::exponential);
  CHECK(rc.a == doctest::Approx(2).epsilon(1e-6));
  rc = rate_classify(DecaySequence::power(2, 3), 10'000);
  CHECK(rc.kind == RateClass::Kind::polynomial);
  CHECK(rc.a == doctest::Approx(3).epsilon(1e-2));
  rc = rate_classify(DecaySequence::polynomial({0, 1, 1}), 10'000);
  CHECK(rc.kind == RateClass::Kind::polynomial);
  CHECK_FALSE(to_string(rc).empty());
}
