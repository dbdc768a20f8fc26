#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "volest/coef.hpp"
#include "volest/errors.hpp"

using namespace volest;

namespace {

std::vector<CoefFn> catalog() {
  return {coef::Constant{2.0},     coef::Linear{1.5, -0.5}, coef::Power{1.0, 0.25},
          coef::Power{2.0, -0.5},  coef::SqrtAbs{1.0},      coef::Reciprocal1p{1.0},
          coef::SinShift{2.0, 1.0}, coef::AffineMeanRev{1.0, 2.0}, coef::SqrtY{1.0}};
}

}  // namespace

TEST_CASE("catalog evaluation is total on the declared domain") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> wide(-1e3, 1e3);
  std::uniform_real_distribution<double> positive(1e-9, 1e3);
  for (const auto& f : catalog()) {
    CAPTURE(f.to_string());
    for (int i = 0; i < 10000; ++i) {
      // J = (0, inf) for the square-root and reciprocal members, R otherwise.
      const bool half_line = std::holds_alternative<coef::SqrtY>(f.variant()) ||
                             std::holds_alternative<coef::Reciprocal1p>(f.variant());
      double y = half_line ? positive(rng) : wide(rng);
      if (!f.in_domain(y)) continue;
      REQUIRE(std::isfinite(f(y)));
    }
  }
}

TEST_CASE("power tail exponent matches numeric growth") {
  for (double p : {-1.0, 0.25, 0.5, 2.0}) {
    const CoefFn f = coef::Power{3.0, p};
    const double y = 1e6;
    const double ratio = f(2.0 * y) / f(y);
    CHECK(ratio == doctest::Approx(std::pow(2.0, p)).epsilon(0.01));
    CHECK(f.tail(Boundary::PlusInfinity).exponent == p);
  }
  const CoefFn r = coef::Reciprocal1p{1.0};
  CHECK(r(2e6) / r(1e6) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(r.tail(Boundary::PlusInfinity).exponent == -1.0);
}

TEST_CASE("tail metadata") {
  CHECK(CoefFn(coef::SinShift{2, 1}).tail(Boundary::PlusInfinity).kind ==
        TailBehavior::Kind::BoundedAwayFromZero);
  CHECK_FALSE(CoefFn(coef::SinShift{0.5, 1}).tail(Boundary::PlusInfinity).known());
  CHECK(CoefFn(coef::SqrtY{1}).tail(Boundary::ZeroPlus).exponent == 0.5);
  CHECK_FALSE(CoefFn(coef::SqrtY{1}).tail(Boundary::MinusInfinity).known());
  CHECK(CoefFn(coef::Linear{1, 0}).tail(Boundary::ZeroPlus).exponent == 1.0);
  CHECK(CoefFn(coef::Linear{1, 2}).tail(Boundary::ZeroPlus).exponent == 0.0);
  CHECK(CoefFn(coef::AffineMeanRev{1, 2}).tail(Boundary::MinusInfinity).exponent == 1.0);
}

TEST_CASE("local profile on the state interval") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(CoefFn(coef::Power{1, 0.25}).local_profile(-inf, inf).inverse_square_locally_integrable);
  CHECK_FALSE(CoefFn(coef::SqrtAbs{1}).local_profile(-inf, inf).inverse_square_locally_integrable);
  CHECK(CoefFn(coef::SqrtAbs{1}).local_profile(0, inf).inverse_square_locally_integrable);
  CHECK_FALSE(CoefFn(coef::Reciprocal1p{1}).local_profile(-inf, inf).locally_bounded);
  CHECK(CoefFn(coef::Reciprocal1p{1}).local_profile(0, inf).locally_bounded);
  CHECK_FALSE(CoefFn(coef::SqrtY{1}).local_profile(-inf, inf).defined);
  CHECK_FALSE(CoefFn(coef::SinShift{0.5, 1}).local_profile(0, inf).inverse_square_locally_integrable);
  CHECK(CoefFn(coef::SinShift{2, 1}).local_profile(-inf, inf).inverse_square_locally_integrable);
  CHECK_FALSE(CoefFn(coef::Linear{1, 0}).local_profile(-inf, inf).inverse_square_locally_integrable);
  CHECK(CoefFn(coef::Linear{1, 0}).local_profile(0, inf).inverse_square_locally_integrable);
  // sin(y) = -0.5 first hits at y = 7pi/6 on the positive axis
  CHECK(CoefFn(coef::SinShift{1, 2}).local_profile(0, 3.0).inverse_square_locally_integrable);
  CHECK_FALSE(CoefFn(coef::SinShift{1, 2}).local_profile(0, 4.0).inverse_square_locally_integrable);
}

TEST_CASE("parse and print round-trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 200; ++i) {
    for (CoefFn f : {CoefFn(coef::Linear{u(rng), u(rng)}), CoefFn(coef::Power{u(rng), u(rng)}),
                     CoefFn(coef::SinShift{u(rng), u(rng)}), CoefFn(coef::SqrtY{u(rng)})}) {
      REQUIRE(CoefFn::parse(f.to_string()) == f);
    }
  }
  CHECK(CoefFn::parse(" power( 1 , 0.25 ) ") == CoefFn(coef::Power{1, 0.25}));
  CHECK(CoefFn::parse("identity").is_identity());
  CHECK(CoefFn(coef::Power{1, 0.25}).to_string() == "power(1,0.25)");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(CoefFn::parse("cubic(1)"), ConfigError);
  CHECK_THROWS_AS(CoefFn::parse("power(1)"), ConfigError);
  CHECK_THROWS_AS(CoefFn::parse("power(1,x)"), ConfigError);
  CHECK_THROWS_AS(CoefFn::parse("power(1,2"), ConfigError);
}

TEST_CASE("values") {
  CHECK(CoefFn(coef::SinShift{2, 1})(0.0) == 2.0);
  CHECK(CoefFn(coef::AffineMeanRev{1, 2})(0.5) == 1.5);
  CHECK(CoefFn(coef::Reciprocal1p{1})(1.0) == 0.5);
  CHECK(CoefFn(coef::Power{1, 0.25})(-16.0) == doctest::Approx(2.0));
  CHECK(CoefFn(coef::Linear{2, 1})(3.0L) == 7.0L);
}
