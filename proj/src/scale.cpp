#include "volest/scale.hpp"

#include <Eigen/SVD>

#include <numbers>

namespace volest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// GBM density exponent as printed in the published example: 2 alpha^2 / beta^2.
double gbm_exponent(const VolatilityModel& vol) {
  const double alpha = vol.param(0), beta = vol.param(1);
  return 2.0 * alpha * alpha / (beta * beta);
}

// beta^2 == 2 alpha^2 up to rounding in the parameters.
bool gbm_log_branch(const VolatilityModel& vol) {
  const double alpha = vol.param(0), beta = vol.param(1);
  return std::abs(beta * beta - 2.0 * alpha * alpha) <= 1e-12 * beta * beta;
}

void require_in_domain(const VolatilityModel& vol, double v, const char* what) {
  if (!vol.in_domain(v)) {
    throw DomainError(std::string(what) + "=" + format_double(v) + " outside the state domain of " +
                      vol.to_string());
  }
}

// Is |y|^q integrable near the boundary?
bool power_integrable(Boundary b, double q) {
  return b == Boundary::ZeroPlus ? q > -1.0 : q < -1.0;
}

std::string power_label(double q) { return "|y|^" + format_double(q); }

}  // namespace

double default_reference_point(const VolatilityModel& vol) {
  switch (vol.kind()) {
    case VolKind::Bachelier:
      return 0.0;
    case VolKind::Vasicek:
      return vol.param(1);
    case VolKind::GBM:
    case VolKind::CIR:
      break;
  }
  return 1.0;
}

double scale_density(const VolatilityModel& vol, double c, double y) {
  require_in_domain(vol, c, "c");
  require_in_domain(vol, y, "y");
  switch (vol.kind()) {
    case VolKind::Bachelier: {
      const double k = 2.0 * vol.param(0) / (vol.param(1) * vol.param(1));
      return std::exp(-k * (y - c));
    }
    case VolKind::Vasicek: {
      const double a = vol.param(0), b = vol.param(1), g2 = vol.param(2) * vol.param(2);
      return std::exp(a / g2 * ((y - b) * (y - b) - (c - b) * (c - b)));
    }
    case VolKind::GBM:
      return std::pow(y / c, -gbm_exponent(vol));
    case VolKind::CIR:
      break;
  }
  const double a = vol.param(0), b = vol.param(1), g2 = vol.param(2) * vol.param(2);
  return std::pow(y / c, -2.0 * a * b / g2) * std::exp(2.0 * a / g2 * (y - c));
}

std::string scale_function_form(const VolatilityModel& vol) {
  switch (vol.kind()) {
    case VolKind::Bachelier:
      return vol.param(0) == 0.0 ? "linear" : "exp";
    case VolKind::Vasicek:
      if (vol.param(0) == 0.0) return "linear";
      return vol.param(0) < 0.0 ? "erf" : "quadrature";
    case VolKind::GBM:
      return gbm_log_branch(vol) ? "ln y" : "power";
    case VolKind::CIR:
      break;
  }
  return "quadrature";
}

std::optional<double> scale_function_closed_form(const VolatilityModel& vol, double c, double y) {
  switch (vol.kind()) {
    case VolKind::Bachelier: {
      const double alpha = vol.param(0), beta = vol.param(1);
      if (alpha == 0.0) return y - c;
      const double k = 2.0 * alpha / (beta * beta);
      return -std::expm1(-k * (y - c)) / k;
    }
    case VolKind::Vasicek: {
      const double a = vol.param(0), b = vol.param(1), gamma = vol.param(2);
      if (a == 0.0) return y - c;
      if (a > 0.0) return std::nullopt;
      const double root = std::sqrt(-a) / gamma;
      const double norm = std::exp(-a / (gamma * gamma) * (c - b) * (c - b));
      return norm * gamma / std::sqrt(-a) * 0.5 * std::sqrt(std::numbers::pi) *
             (std::erf(root * (y - b)) - std::erf(root * (c - b)));
    }
    case VolKind::GBM: {
      if (gbm_log_branch(vol)) return c * std::log(y / c);
      const double p = gbm_exponent(vol);
      return std::pow(c, p) * (std::pow(y, 1.0 - p) - std::pow(c, 1.0 - p)) / (1.0 - p);
    }
    case VolKind::CIR:
      break;
  }
  return std::nullopt;
}

double scale_function_quadrature(const VolatilityModel& vol, double c, double y, double abs_tol) {
  require_in_domain(vol, c, "c");
  require_in_domain(vol, y, "y");
  return adaptive_simpson([&](double u) { return scale_density(vol, c, u); }, c, y, abs_tol);
}

BoundaryValue scale_at_upper(const VolatilityModel& vol, double c) {
  require_in_domain(vol, c, "c");
  switch (vol.kind()) {
    case VolKind::Bachelier: {
      const double alpha = vol.param(0), beta = vol.param(1);
      if (alpha <= 0.0) return BoundaryValue::infinite(1.0);
      return BoundaryValue::at(beta * beta / (2.0 * alpha));
    }
    case VolKind::Vasicek: {
      const double a = vol.param(0), b = vol.param(1), gamma = vol.param(2);
      if (a >= 0.0) return BoundaryValue::infinite(1.0);
      const double root = std::sqrt(-a) / gamma;
      const double norm = std::exp(-a / (gamma * gamma) * (c - b) * (c - b));
      return BoundaryValue::at(norm * gamma / std::sqrt(-a) * 0.5 * std::sqrt(std::numbers::pi) *
                               std::erfc(root * (c - b)));
    }
    case VolKind::GBM: {
      if (gbm_log_branch(vol)) return BoundaryValue::infinite(1.0);
      const double p = gbm_exponent(vol);
      if (p < 1.0) return BoundaryValue::infinite(1.0);
      return BoundaryValue::at(c / (p - 1.0));
    }
    case VolKind::CIR:
      break;
  }
  // rho(u) -> inf as u -> inf
  return BoundaryValue::infinite(1.0);
}

BoundaryValue scale_at_lower(const VolatilityModel& vol, double c) {
  require_in_domain(vol, c, "c");
  switch (vol.kind()) {
    case VolKind::Bachelier: {
      const double alpha = vol.param(0), beta = vol.param(1);
      if (alpha >= 0.0) return BoundaryValue::infinite(-1.0);
      return BoundaryValue::at(beta * beta / (2.0 * alpha));
    }
    case VolKind::Vasicek: {
      const double a = vol.param(0), b = vol.param(1), gamma = vol.param(2);
      if (a >= 0.0) return BoundaryValue::infinite(-1.0);
      const double root = std::sqrt(-a) / gamma;
      const double norm = std::exp(-a / (gamma * gamma) * (c - b) * (c - b));
      return BoundaryValue::at(-norm * gamma / std::sqrt(-a) * 0.5 * std::sqrt(std::numbers::pi) *
                               std::erfc(-root * (c - b)));
    }
    case VolKind::GBM: {
      if (gbm_log_branch(vol)) return BoundaryValue::infinite(-1.0);
      const double p = gbm_exponent(vol);
      if (p > 1.0) return BoundaryValue::infinite(-1.0);
      return BoundaryValue::at(-c / (1.0 - p));
    }
    case VolKind::CIR:
      break;
  }
  // 2ab/gamma^2 >= 1 makes u^(-2ab/gamma^2) non-integrable at 0+
  return BoundaryValue::infinite(-1.0);
}

double scale_function(const VolatilityModel& vol, double c, double y) {
  require_in_domain(vol, c, "c");
  if (y >= vol.upper()) return scale_at_upper(vol, c).value;
  if (y <= vol.lower()) return scale_at_lower(vol, c).value;
  if (auto closed = scale_function_closed_form(vol, c, y)) return *closed;
  return scale_function_quadrature(vol, c, y);
}

std::string_view to_string(A6Case c) {
  switch (c) {
    case A6Case::I:
      return "i";
    case A6Case::II:
      return "ii";
    case A6Case::III:
      return "iii";
    case A6Case::IV:
      return "iv";
    case A6Case::NotSatisfied:
      return "not_satisfied";
    case A6Case::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

std::string ScaleReport::to_text() const {
  auto value = [](const BoundaryValue& v) {
    return v.finite ? format_double(v.value) : (v.value > 0 ? std::string("+inf") : "-inf");
  };
  std::vector<std::pair<std::string, std::string>> rows{
      {"model", model},
      {"sigma2", sigma2},
      {"c", format_double(c)},
      {"s_form", s_form},
      {"s_at_l", value(s_at_l)},
      {"s_at_r", value(s_at_r)},
      {"a6_case", std::string(to_string(a6_case))},
      {"consistency_guaranteed", consistency_guaranteed ? "true" : "false"},
  };
  for (const auto& n : notes) rows.emplace_back("note", n);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::string out;
  for (const auto& [k, v] : rows) {
    out += std::string(width - k.size(), ' ') + k + ": " + v + '\n';
  }
  return out;
}

namespace {

// Power-law exponent q of the perpetual-integral integrand
// (s(b) - s)/(rho beta^2 sigma2^2) near boundary b, given the sigma2 tail
// exponent p. Each model reduces it to a constant times sigma2^-2
// (Bachelier) or |y|^-1 sigma2^-2 (Vasicek, GBM).
double perpetual_exponent(VolKind kind, double p) {
  return kind == VolKind::Bachelier ? -2.0 * p : -1.0 - 2.0 * p;
}

}  // namespace

ScaleReport classify_a6(const VolatilityModel& vol, const CoefFn& sigma2) {
  ScaleReport report;
  report.model = vol.to_string();
  report.sigma2 = sigma2.to_string();
  report.c = default_reference_point(vol);
  report.s_form = scale_function_form(vol);
  report.s_at_r = scale_at_upper(vol, report.c);
  report.s_at_l = scale_at_lower(vol, report.c);
  report.a6_case = A6Case::Indeterminate;
  report.consistency_guaranteed = false;

  if (vol.kind() == VolKind::GBM) {
    const double printed = gbm_exponent(vol);
    const double drift = 2.0 * vol.param(0) / (vol.param(1) * vol.param(1));
    report.notes.push_back("density exponent 2*alpha^2/beta^2=" + format_double(printed) +
                           " as published; drift alpha*y gives 2*alpha/beta^2=" +
                           format_double(drift) + (printed == drift ? " (equal)" : " (differs)"));
  }

  const Boundary upper = Boundary::PlusInfinity;
  const Boundary lower = vol.positive_domain() ? Boundary::ZeroPlus : Boundary::MinusInfinity;

  // Perpetual-integral divergence at each boundary where s is finite.
  bool tails_known = true;
  bool divergent = true;
  for (auto [bound, finite] : {std::pair{upper, report.s_at_r.finite},
                               std::pair{lower, report.s_at_l.finite}}) {
    if (!finite) {
      report.notes.push_back("s(" + std::string(to_string(bound)) + ") infinite");
      continue;
    }
    const TailBehavior tail = sigma2.tail(bound);
    if (!tail.known()) {
      tails_known = false;
      report.notes.push_back("s(" + std::string(to_string(bound)) + ") finite; sigma2 has no tail metadata at " +
                             std::string(to_string(bound)));
      continue;
    }
    const double q = perpetual_exponent(vol.kind(), tail.effective_exponent());
    const bool integrable = power_integrable(bound, q);
    report.notes.push_back("s(" + std::string(to_string(bound)) + ") finite; perpetual integrand ~ " +
                           power_label(q) + (integrable ? " integrable" : " not integrable") +
                           " at " + std::string(to_string(bound)));
    divergent = divergent && !integrable;
  }
  if (!tails_known) return report;

  const auto profile = sigma2.local_profile(vol.lower(), vol.upper());
  if (!profile.defined || !profile.locally_bounded) {
    report.notes.push_back("sigma2 not locally bounded on J: " + profile.reason);
    report.a6_case = A6Case::NotSatisfied;
    return report;
  }
  if (!profile.inverse_square_locally_integrable) {
    report.notes.push_back("sigma2^-2 not locally integrable on J: " + profile.reason);
    report.a6_case = A6Case::NotSatisfied;
    return report;
  }

  if (!divergent) {
    report.a6_case = A6Case::NotSatisfied;
  } else if (!report.s_at_r.finite && !report.s_at_l.finite) {
    report.a6_case = A6Case::I;
  } else if (report.s_at_r.finite && !report.s_at_l.finite) {
    report.a6_case = A6Case::II;
  } else if (!report.s_at_r.finite) {
    report.a6_case = A6Case::III;
  } else {
    report.a6_case = A6Case::IV;
  }
  report.consistency_guaranteed = report.a6_case != A6Case::NotSatisfied;
  return report;
}

double ellipticity_margin(double sigma1sigma2, double beta, double rho) {
  if (!(std::abs(rho) < 1.0)) {
    throw DegenerateCorrelationError("ellipticity margin needs |rho| < 1, got rho=" +
                                     format_double(rho));
  }
  if (!(sigma1sigma2 > 0.0) || !(beta > 0.0)) {
    throw DomainError("ellipticity margin needs sigma1*sigma2 > 0 and beta > 0");
  }
  Eigen::Matrix2d b;
  b << sigma1sigma2, 0.0, rho * beta, std::sqrt(1.0 - rho * rho) * beta;
  return Eigen::JacobiSVD<Eigen::Matrix2d>(b).singularValues()(1);
}

}  // namespace volest
