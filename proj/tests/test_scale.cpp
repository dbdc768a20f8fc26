#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "volest/scale.hpp"

using namespace volest;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("adaptive Simpson") {
  CHECK(adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double x) { return x * x; }, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-14, 12),
                  QuadratureError);
}

TEST_CASE("scale density") {
  CHECK(scale_density(VolatilityModel::bachelier(0.0, 1.0, 0.0), 0.0, 17.0) == 1.0);
  CHECK(scale_density(VolatilityModel::vasicek(1.0, 0.5, 1.0, 1.0), 0.5, 0.5) == 1.0);
  CHECK(scale_density(VolatilityModel::gbm(1.0, std::sqrt(2.0), 1.0), 1.0, 2.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(scale_density(VolatilityModel::cir(1.0, 1.0, 1.0, 1.0), 1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(scale_density(VolatilityModel::gbm(1.0, 1.0, 1.0), 1.0, -1.0), DomainError);
  CHECK(default_reference_point(VolatilityModel::vasicek(1.0, 0.5, 1.0, 1.0)) == 0.5);
  CHECK(default_reference_point(VolatilityModel::cir(1.0, 2.0, 1.0, 1.0)) == 1.0);
}

TEST_CASE("closed forms by hand") {
  const auto ln_branch = VolatilityModel::gbm(1.0, std::sqrt(2.0), 1.0);
  CHECK(scale_function_form(ln_branch) == "ln y");
  CHECK(scale_function(ln_branch, 1.0, std::numbers::e) == doctest::Approx(1.0).epsilon(1e-14));
  const auto flat = VolatilityModel::bachelier(0.0, 1.0, 0.0);
  CHECK(scale_function(flat, 0.0, 3.0) == 3.0);
  const auto vas = VolatilityModel::vasicek(-1.0, 0.0, 1.0, 1.0);
  CHECK(scale_function_form(vas) == "erf");
  CHECK(scale_function(vas, 0.0, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-14));
  CHECK(scale_function(vas, 0.0, -std::numeric_limits<double>::infinity()) ==
        doctest::Approx(-std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-14));
  CHECK(scale_function_form(VolatilityModel::cir(1.0, 2.0, 1.0, 1.0)) == "quadrature");
}

TEST_CASE("quadrature agrees with every closed form") {
  const std::vector<VolatilityModel> models = {
      VolatilityModel::bachelier(1.0, 1.0, 0.0),  VolatilityModel::bachelier(-0.5, 2.0, 0.0),
      VolatilityModel::bachelier(0.0, 1.0, 0.0),  VolatilityModel::vasicek(-1.0, 0.0, 1.0, 1.0),
      VolatilityModel::vasicek(-0.3, 1.0, 2.0, 1.0), VolatilityModel::gbm(1.0, 2.0, 1.0),
      VolatilityModel::gbm(1.0, 1.0, 1.0),        VolatilityModel::gbm(1.0, std::sqrt(2.0), 1.0)};
  for (const auto& vol : models) {
    CAPTURE(vol.to_string());
    const double c = default_reference_point(vol);
    for (int i = 1; i <= 50; ++i) {
      const double y = c + 0.1 * i;
      const auto closed = scale_function_closed_form(vol, c, y);
      REQUIRE(closed.has_value());
      REQUIRE(rel(scale_function_quadrature(vol, c, y), *closed) <= 1e-6);
    }
  }
}

TEST_CASE("scale function is strictly increasing") {
  for (const auto& vol : {VolatilityModel::cir(1.0, 2.0, 1.0, 1.0), VolatilityModel::gbm(1.0, 2.0, 1.0),
                          VolatilityModel::vasicek(2.0, 1.0, 1.0, 1.0)}) {
    const double c = default_reference_point(vol);
    double prev = scale_function(vol, c, 0.05);
    for (int i = 2; i <= 60; ++i) {
      const double s = scale_function(vol, c, 0.05 * i);
      REQUIRE(s > prev);
      prev = s;
    }
  }
}

TEST_CASE("boundary values") {
  const auto gbm_iii = VolatilityModel::gbm(1.0, 2.0, 1.0);  // beta^2 > 2 alpha^2
  CHECK(scale_at_upper(gbm_iii, 1.0).finite == false);
  CHECK(scale_at_lower(gbm_iii, 1.0).finite);
  CHECK(scale_at_lower(gbm_iii, 1.0).value == doctest::Approx(-2.0));
  const auto vas = VolatilityModel::vasicek(1.0, 0.0, 1.0, 1.0);
  CHECK_FALSE(scale_at_upper(vas, 0.0).finite);
  CHECK_FALSE(scale_at_lower(vas, 0.0).finite);
  const auto cir = VolatilityModel::cir(1.0, 1.0, 1.0, 1.0);
  CHECK_FALSE(scale_at_upper(cir, 1.0).finite);
  CHECK_FALSE(scale_at_lower(cir, 1.0).finite);
}

TEST_CASE("classifier reproduces the worked examples") {
  auto classify = [](const VolatilityModel& v, const CoefFn& s) { return classify_a6(v, s); };

  auto r = classify(VolatilityModel::bachelier(0.0, 1.0, 1.0), coef::Power{1.0, 0.25});
  CHECK(r.a6_case == A6Case::I);
  CHECK(r.consistency_guaranteed);

  // Vasicek with a >= 0 is recurrent, so any admissible sigma2 is consistent
  for (const CoefFn& s : {CoefFn(coef::SinShift{2.0, 1.0}), CoefFn(coef::Constant{1.0}),
                          CoefFn(coef::SinShift{0.5, 1.0})}) {
    r = classify(VolatilityModel::vasicek(1.0, 0.0, 1.0, 1.0), s);
    CHECK(r.consistency_guaranteed == (s != CoefFn(coef::SinShift{0.5, 1.0})));
  }

  r = classify(VolatilityModel::gbm(1.0, std::sqrt(2.0), 1.0), coef::SqrtY{1.0});
  CHECK(r.a6_case == A6Case::I);
  CHECK(r.s_form == "ln y");

  r = classify(VolatilityModel::cir(1.0, 1.0, 1.0, 1.0), coef::SqrtY{1.0});
  CHECK(r.a6_case == A6Case::I);
  r = classify(VolatilityModel::cir(1.0, 2.0, 1.0, 1.0), coef::Linear{1.0, 0.0});
  CHECK(r.a6_case == A6Case::I);

  r = classify(VolatilityModel::gbm(1.0, 2.0, 1.0), coef::SqrtY{1.0});
  CHECK(r.a6_case == A6Case::III);
  CHECK(r.consistency_guaranteed);
}

TEST_CASE("classifier edge cases") {
  // Vasicek a < 0: both boundaries finite; sigma2 = 2 + sin y is bounded so
  // y^-1 sigma2^-2 is not integrable at either infinity
  auto r = classify_a6(VolatilityModel::vasicek(-1.0, 0.0, 1.0, 1.0), coef::SinShift{2.0, 1.0});
  CHECK(r.a6_case == A6Case::IV);
  // sin y alone has zeros and no tail metadata
  r = classify_a6(VolatilityModel::vasicek(-1.0, 0.0, 1.0, 1.0), coef::SinShift{0.0, 1.0});
  CHECK(r.a6_case == A6Case::Indeterminate);
  CHECK_FALSE(r.consistency_guaranteed);
  // sigma2 growing fast enough makes the perpetual integral converge
  r = classify_a6(VolatilityModel::bachelier(1.0, 1.0, 1.0), coef::Power{1.0, 1.0});
  CHECK(r.a6_case == A6Case::NotSatisfied);
  r = classify_a6(VolatilityModel::bachelier(1.0, 1.0, 1.0), coef::Power{1.0, 0.25});
  CHECK(r.a6_case == A6Case::II);
  r = classify_a6(VolatilityModel::bachelier(-1.0, 1.0, 1.0), coef::Power{1.0, 0.25});
  CHECK(r.a6_case == A6Case::III);
  // GBM beta^2 < 2 alpha^2: s(r) finite, needs y^-1 sigma2^-2 non-integrable at infinity
  r = classify_a6(VolatilityModel::gbm(1.0, 1.0, 1.0), coef::Reciprocal1p{1.0});
  CHECK(r.a6_case == A6Case::II);
  r = classify_a6(VolatilityModel::gbm(1.0, 1.0, 1.0), coef::SqrtY{1.0});
  CHECK(r.a6_case == A6Case::NotSatisfied);
  // locally degenerate sigma2
  r = classify_a6(VolatilityModel::bachelier(0.0, 1.0, 1.0), coef::SqrtAbs{1.0});
  CHECK(r.a6_case == A6Case::NotSatisfied);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("report text") {
  const auto r = classify_a6(VolatilityModel::gbm(1.0, std::sqrt(2.0), 1.0), coef::SqrtY{1.0});
  const std::string text = r.to_text();
  CHECK(text.find("a6_case: i\n") != std::string::npos);
  CHECK(text.find("s_form: ln y\n") != std::string::npos);
}

TEST_CASE("ellipticity margin against the matrix definition") {
  CHECK(ellipticity_margin(1.0, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(ellipticity_margin(2.0, 3.0, 0.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(ellipticity_margin(1.0, 1.0, 1.0), DegenerateCorrelationError);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mag(0.1, 5.0), cor(-0.999, 0.999);
  for (int i = 0; i < 200; ++i) {
    const double s = mag(rng), b = mag(rng), r = cor(rng);
    Eigen::Matrix2d B;
    B << s, 0.0, r * b, std::sqrt(1 - r * r) * b;
    // the product of singular values is |det B|
    const double eps = ellipticity_margin(s, b, r);
    const double lmax = (B.transpose() * B).eigenvalues().real().maxCoeff();
    REQUIRE(eps > 0.0);
    REQUIRE(eps * std::sqrt(lmax) == doctest::Approx(std::abs(B.determinant())).epsilon(1e-10));
  }
}
