#include <doctest.h>

#include <cmath>

#include "dopsym/coefficient_ring.hpp"
#include "dopsym/errors.hpp"
#include "support.hpp"

using namespace dopsym;

namespace {

CoefficientFunction x_pow(unsigned n) { return PolyFn::monomial(n); }

bool agrees_pointwise(const CoefficientFunction& exact, const std::function<double(double)>& f,
                      unsigned samples) {
  for (double t : testgen::angles(samples)) {
    if (std::abs(exact.eval(t) - f(t)) > 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("rings") {
  TEST_CASE("products") {
    CHECK(x_pow(1) * x_pow(2) == x_pow(3));
    const CoefficientFunction c = TrigFn::cos(1);
    const CoefficientFunction sq = c * c;
    CHECK(sq == CoefficientFunction(TrigFn::constant(Rat(1, 2)) + TrigFn::cos(2, Rat(1, 2))));
    CHECK(agrees_pointwise(sq, [](double t) { return std::cos(t) * std::cos(t); }, 8));
    testgen::Rng rng(1);
    for (Space s : {Space::line, Space::circle}) {
      const auto f = testgen::function(rng, s);
      CHECK((f * CoefficientFunction::zero(s)).is_zero());
    }
  }

  TEST_CASE("derivatives") {
    CHECK(ring_diff(x_pow(3)) == CoefficientFunction(PolyFn::monomial(2, Rat(3))));
    CHECK(ring_diff(TrigFn::cos(2)) == CoefficientFunction(TrigFn::sin(2, Rat(-2))));
    CHECK(ring_diff(TrigFn::sin(1), 2) == CoefficientFunction(TrigFn::sin(1, Rat(-1))));
    CHECK(ring_diff(x_pow(2), 5).is_zero());
  }

  TEST_CASE("circle mean") {
    CHECK(circle_mean(TrigFn::constant(Rat(2)) + TrigFn::cos(1)) == Rat(2));
    CHECK(circle_mean(TrigFn::sin(3)) == Rat(0));
    CHECK_THROWS_AS(circle_mean(x_pow(1)), UnsupportedFunctional);
  }

  TEST_CASE("mixing spaces is an error") {
    const CoefficientFunction line = x_pow(1);
    const CoefficientFunction circle = TrigFn::cos(1);
    CHECK_THROWS_AS(line + circle, RingMismatch);
    CHECK_THROWS_AS(line * circle, RingMismatch);
    CHECK_THROWS_AS(circle - line, RingMismatch);
  }

  TEST_CASE("ring axioms on random elements") {
    testgen::Rng rng(2);
    for (Space s : {Space::line, Space::circle}) {
      for (int trial = 0; trial < 60; ++trial) {
        const auto f = testgen::function(rng, s);
        const auto g = testgen::function(rng, s);
        const auto h = testgen::function(rng, s);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK(f * g == g * f);
        CHECK((f + g) - g == f);
        CHECK(f * CoefficientFunction::constant(s, Rat(1)) == f);
      }
    }
  }

  TEST_CASE("Leibniz rule") {
    testgen::Rng rng(3);
    for (Space s : {Space::line, Space::circle}) {
      for (int trial = 0; trial < 60; ++trial) {
        const auto f = testgen::function(rng, s);
        const auto g = testgen::function(rng, s);
        CHECK(ring_diff(f * g) == ring_diff(f) * g + f * ring_diff(g));
        CHECK(ring_diff(ring_diff(f), 2) == ring_diff(f, 3));
      }
    }
  }

  TEST_CASE("derivatives have zero mean") {
    testgen::Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = testgen::function(rng, Space::circle, 5);
      CHECK(circle_mean(ring_diff(f)) == Rat(0));
    }
  }

  TEST_CASE("trig arithmetic agrees with floating point at 16 angles") {
    testgen::Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const auto f = testgen::function(rng, Space::circle);
      const auto g = testgen::function(rng, Space::circle);
      const auto prod = f * g;
      const auto sum = f + g;
      const auto df = ring_diff(f);
      for (double t : testgen::angles(16)) {
        CHECK(std::abs(prod.eval(t) - f.eval(t) * g.eval(t)) < 1e-9);
        CHECK(std::abs(sum.eval(t) - (f.eval(t) + g.eval(t))) < 1e-9);
        const double h = 1e-5;
        CHECK(std::abs(df.eval(t) - (f.eval(t + h) - f.eval(t - h)) / (2 * h)) < 1e-4);
      }
    }
  }

  TEST_CASE("text round trip") {
    testgen::Rng rng(6);
    for (Space s : {Space::line, Space::circle}) {
      for (int trial = 0; trial < 30; ++trial) {
        const auto f = testgen::function(rng, s);
        CAPTURE(to_string(f));
        CHECK(parse_coefficient(to_string(f)) == f);
      }
    }
    CHECK(parse_coefficient("poly: 1 - 2*x^2") ==
          CoefficientFunction(PolyFn({Rat(1), Rat(0), Rat(-2)})));
    CHECK_THROWS_AS(parse_coefficient("poly: 0.5*x"), ParseError);
    CHECK_THROWS_AS(parse_coefficient("rational: 1"), ParseError);
    CHECK(parse_space("circle") == Space::circle);
    CHECK_THROWS_AS(parse_space("torus"), ParseError);
  }
}
