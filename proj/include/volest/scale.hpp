#pragma once

// Scale density and scale function of the volatility diffusion,
//
//   rho(y) = exp(-2 int_c^y alpha(u)/beta(u)^2 du),   s(y) = int_c^y rho(u) du,
//
// boundary finiteness of s, the four boundary-integrability cases that make
// int_0^inf sigma2(Y_s)^-2 ds diverge, and the ellipticity margin of the
// joint (X, Y) diffusion matrix.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "volest/coef.hpp"
#include "volest/errors.hpp"
#include "volest/models.hpp"

namespace volest {

// Adaptive Simpson on the compact interval [a, b]. The local acceptance test
// is |S2 - S1| <= 15 max(abs_tol, 64 eps |S2|); throws QuadratureError if a
// subinterval is still unresolved at max_depth.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol = 1e-10, int max_depth = 48) {
  struct Ctx {
    F& f;
    double worst = 0.0;
    bool failed = false;
  } ctx{f};
  auto simpson = [](double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  };
  auto recurse = [&](auto&& self, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) -> double {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ctx.f(lm);
    const double frm = ctx.f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(left + right);
    if (depth <= 0) {
      ctx.failed = true;
      ctx.worst = std::max(ctx.worst, std::abs(delta));
      return left + right + delta / 15.0;
    }
    if (depth < max_depth - 4 && std::abs(delta) <= 15.0 * std::max(tol, floor)) {
      return left + right + delta / 15.0;
    }
    return self(self, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           self(self, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  };
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double result =
      recurse(recurse, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), abs_tol, max_depth);
  if (ctx.failed || !std::isfinite(result)) throw QuadratureError(result, ctx.worst);
  return result;
}

// b for Vasicek, 1 for GBM and CIR, 0 for Bachelier.
double default_reference_point(const VolatilityModel& vol);

// Closed-form scale density normalised at c. The GBM branch uses the exponent
// 2 alpha^2 / beta^2 of the published example. Throws DomainError off J.
double scale_density(const VolatilityModel& vol, double c, double y);

// Which representation scale_function uses: "linear", "exp", "erf", "power",
// "ln y" or "quadrature".
std::string scale_function_form(const VolatilityModel& vol);

// s(y) for y in the closure of J (boundaries give +-inf or a finite limit).
double scale_function(const VolatilityModel& vol, double c, double y);

// int_c^y rho(u) du by adaptive Simpson; y must lie in J.
double scale_function_quadrature(const VolatilityModel& vol, double c, double y,
                                 double abs_tol = 1e-10);

// Printed closed form when one exists for the model/parameters.
std::optional<double> scale_function_closed_form(const VolatilityModel& vol, double c, double y);

struct BoundaryValue {
  bool finite;
  double value;  // +-inf when not finite

  static BoundaryValue infinite(double sign) {
    return {false, std::copysign(std::numeric_limits<double>::infinity(), sign)};
  }
  static BoundaryValue at(double v) { return {true, v}; }
};

BoundaryValue scale_at_upper(const VolatilityModel& vol, double c);
BoundaryValue scale_at_lower(const VolatilityModel& vol, double c);

enum class A6Case { I, II, III, IV, NotSatisfied, Indeterminate };

std::string_view to_string(A6Case c);

struct ScaleReport {
  std::string model;
  std::string sigma2;
  double c;
  std::string s_form;
  BoundaryValue s_at_r;
  BoundaryValue s_at_l;
  A6Case a6_case;
  bool consistency_guaranteed;
  std::vector<std::string> notes;

  // Right-aligned `key: value` lines.
  std::string to_text() const;
};

// Symbolic classification from the tail metadata of sigma2; never returns a
// definite case when a needed tail is unknown.
ScaleReport classify_a6(const VolatilityModel& vol, const CoefFn& sigma2);

// Smallest singular value of [[s, 0], [rho beta, sqrt(1-rho^2) beta]], i.e.
// the largest eps with ||B lambda|| >= eps ||lambda||. Throws
// DegenerateCorrelationError for |rho| >= 1.
double ellipticity_margin(double sigma1sigma2, double beta, double rho);

}  // namespace volest
