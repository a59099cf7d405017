#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "seqderiv/error.hpp"
#include "seqderiv/gallery.hpp"

#ifdef SEQDERIV_HAVE_MPFR
#include <mpfr.h>
#endif

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

#ifdef SEQDERIV_HAVE_MPFR
// Direct sum at 400 bits: b^n x is carried exactly for every summed term.
double weierstrass_oracle(double a, long b, double x, int last) {
  mpfr_t sum, term, arg, pi, an, bn;
  mpfr_inits2(400, sum, term, arg, pi, an, bn, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(sum, 1);
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set_ui(an, 1, MPFR_RNDN);
  mpfr_set_ui(bn, 1, MPFR_RNDN);
  for (int n = 0; n <= last; ++n) {
    mpfr_mul_d(arg, bn, x, MPFR_RNDN);
    mpfr_mul(arg, arg, pi, MPFR_RNDN);
    mpfr_cos(term, arg, MPFR_RNDN);
    mpfr_mul(term, term, an, MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);
    mpfr_mul_d(an, an, a, MPFR_RNDN);
    mpfr_mul_si(bn, bn, b, MPFR_RNDN);
  }
  const double out = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clears(sum, term, arg, pi, an, bn, static_cast<mpfr_ptr>(nullptr));
  return out;
}
#endif

}  // namespace

TEST_CASE("weierstrass closed-form points") {
  CHECK(weierstrass(0.5, 13, 0.0) == 2.0);
  CHECK(weierstrass(0.5, 13, 1.0) == -2.0);
  CHECK(std::abs(weierstrass(0.5, 13, 0.5)) < 1e-15);
  CHECK(kind_of([] { weierstrass(1.5, 13, 0); }) == ErrorKind::param);
  CHECK(kind_of([] { weierstrass(0.5, 12, 0); }) == ErrorKind::param);
  CHECK(weierstrass_condition(0.5, 13));
  CHECK_FALSE(weierstrass_condition(0.5, 3));
  CHECK(weierstrass_last_term(0.5, 1e-16) == 54);
}

TEST_CASE("cos_pi is exact at half integers") {
  CHECK(cos_pi(0.5) == 0.0);
  CHECK(cos_pi(1.0) == -1.0);
  CHECK(cos_pi(-2.5) == 0.0);
  CHECK(cos_pi(1.0 / 3) == doctest::Approx(0.5));
}

#ifdef SEQDERIV_HAVE_MPFR
TEST_CASE("weierstrass against the multiprecision oracle") {
  gen::Gen g(7);
  const int last = weierstrass_last_term(0.5, 1e-16);
  for (int t = 0; t < 300; ++t) {
    const double x = g.coin() ? g.uniform(-3, 3) : g.log_uniform(-12, -1);
    CHECK(std::abs(weierstrass(0.5, 13, x) - weierstrass_oracle(0.5, 13, x, last)) <= 1e-14);
  }
  for (int t = 0; t < 50; ++t) {
    const double x = g.uniform(-1, 1);
    CHECK(std::abs(weierstrass(0.7, 7, x) - weierstrass_oracle(0.7, 7, x, weierstrass_last_term(0.7, 1e-16))) <= 1e-13);
  }
}
#endif

TEST_CASE("sine envelope branches") {
  CHECK(sine_envelope(-1, 2, 0) == 0.0);
  CHECK(sine_envelope(-1, 2, 2 / std::numbers::pi) == doctest::Approx(4 / std::numbers::pi));
  CHECK(sine_envelope(-1, 2, 2 / (3 * std::numbers::pi)) == doctest::Approx(-2 / (3 * std::numbers::pi)));
  CHECK(kind_of([] { sine_envelope(-1, 2, 1.5); }) == ErrorKind::domain);
  CHECK(kind_of([] { sine_envelope(2, -1, 0.5); }) == ErrorKind::param);
  gen::Gen g(8);
  for (int t = 0; t < 1000; ++t) {
    const double x = g.log_uniform(-8, 0);
    const double q = sine_envelope(-1, 2, x) / x;
    CHECK(q >= -1 - 1e-12);
    CHECK(q <= 2 + 1e-12);
  }
}

TEST_CASE("glued function mirrors the second envelope") {
  CHECK(glued(-1, 2, -3, 1, 0) == 0.0);
  gen::Gen g(9);
  for (int t = 0; t < 200; ++t) {
    const double x = g.uniform(1e-6, 1);
    CHECK(glued(-1, 2, -3, 1, x) == sine_envelope(-1, 2, x));
    CHECK(glued(-1, 2, -3, 1, -x) == sine_envelope(-1, 3, x));
  }
}

TEST_CASE("dense slope cells") {
  const auto f = make_dense_slope(ClosedExtSet::interval(ext(0), ext(1)), {0, 0.5, 1});
  CHECK(f(0) == 0.0);
  gen::Gen g(10);
  int slope_cells = 0, sqrt_cells = 0;
  for (int t = 0; t < 5000; ++t) {
    const double x = g.log_uniform(-4, 0);
    const auto cell = dense_slope_cell(x);
    CHECK(x > 1.0 / static_cast<double>(cell.block + 1));
    CHECK(x <= 1.0 / static_cast<double>(cell.block));
    if (cell.is_slope_cell()) {
      ++slope_cells;
      const double v = f(x) / x;
      CHECK((v == 0.0 || v == 0.5 || v == 1.0));
    } else {
      ++sqrt_cells;
      CHECK(f(x) == std::sqrt(x));
    }
  }
  CHECK(slope_cells > 0);
  CHECK(sqrt_cells > 0);
  CHECK(kind_of([] { make_dense_slope(ClosedExtSet::interval(ext(0), ext(1)), {}); }) == ErrorKind::param);
}

TEST_CASE("two slope lives on its samples") {
  const auto f = make_two_slope(1, 0, DecaySequence::exponential(2), DecaySequence::exponential(4));
  CHECK(f(0) == 0.0);
  CHECK(f(0.25) == 0.25);
  CHECK(f(-1.0 / 16) == 0.0);
  CHECK_FALSE(f.continuous());
  CHECK(kind_of([&] { f(0.3); }) == ErrorKind::domain);
  CHECK(f.domain().kind == Domain::Kind::discrete);
  for (Index n = 1; n < 1000; n += 37) CHECK(f(std::ldexp(1.0, static_cast<int>(-n))) / std::ldexp(1.0, static_cast<int>(-n)) == 1.0);
}

TEST_CASE("simple functions and domains") {
  CHECK(make_abs()(-2.5) == 2.5);
  CHECK(make_cube()(2) == 8);
  CHECK(kind_of([] { make_sqrt()(-1); }) == ErrorKind::domain);
  CHECK(make_sqrt_sin()(0) == 0.0);
  CHECK(kind_of([] { make_sqrt_sin()(2); }) == ErrorKind::domain);
  const auto s = shifted(make_square(), 1.0);
  CHECK(s(0.5) == doctest::Approx(1.25));
  CHECK(s(0) == 0.0);
}

TEST_CASE("registry specs rebuild their functions") {
  for (const auto& e : gallery_catalog()) {
    const auto f = make_function(e.example_spec);
    CHECK(f.name() == e.name);
    CHECK(f.continuous() == e.continuous);
    const auto again = make_function(f.spec());
    CHECK(again.spec() == f.spec());
    if (f.in_domain(0.0)) CHECK(again(0.0) == f(0.0));
  }
  CHECK(kind_of([] { make_function("nosuch"); }) == ErrorKind::param);
  CHECK(kind_of([] { make_function("weierstrass:a=zz"); }) == ErrorKind::param);
  CHECK(kind_of([] { make_function("weierstrass:b=12"); }) == ErrorKind::param);
}
