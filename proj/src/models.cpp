#include "volest/models.hpp"

#include <algorithm>

#include "volest/errors.hpp"

namespace volest {

std::string_view to_string(VolKind kind) {
  switch (kind) {
    case VolKind::Bachelier:
      return "bachelier";
    case VolKind::Vasicek:
      return "vasicek";
    case VolKind::GBM:
      return "gbm";
    case VolKind::CIR:
      return "cir";
  }
  return "?";
}

VolKind parse_vol_kind(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "bachelier") return VolKind::Bachelier;
  if (key == "vasicek" || key == "ou") return VolKind::Vasicek;
  if (key == "gbm") return VolKind::GBM;
  if (key == "cir") return VolKind::CIR;
  throw ConfigError("unknown volatility model '" + std::string(name) + "'");
}

std::size_t param_count(VolKind kind) {
  return (kind == VolKind::Bachelier || kind == VolKind::GBM) ? 2 : 3;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void ValidationReport::add(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

std::string ValidationReport::to_text() const {
  std::string out;
  for (const auto& c : checks) {
    out += c.passed ? "ok    " : "FAIL  ";
    out += c.name;
    if (!c.detail.empty()) out += "  (" + c.detail + ")";
    out += '\n';
  }
  return out;
}

ValidationReport check_volatility(VolKind kind, std::span<const double> p, double y0) {
  ValidationReport report;
  const std::size_t need = param_count(kind);
  if (p.size() != need) {
    report.add("param_count", false,
               std::string(to_string(kind)) + " expects " + std::to_string(need) + " parameters");
    return report;
  }
  if (!std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); })) {
    report.add("params_finite", false);
    return report;
  }
  switch (kind) {
    case VolKind::Bachelier:
    case VolKind::GBM:
      report.add("beta_nonzero", p[1] != 0.0, "beta=" + format_double(p[1]));
      break;
    case VolKind::Vasicek:
      report.add("beta_nonzero", p[2] > 0.0, "gamma=" + format_double(p[2]) + " must be > 0");
      break;
    case VolKind::CIR: {
      const bool positive = p[0] > 0.0 && p[1] > 0.0 && p[2] > 0.0;
      report.add("beta_nonzero", positive, "a, b, gamma must be > 0");
      const double lhs = 2.0 * p[0] * p[1];
      const double rhs = p[2] * p[2];
      report.add("feller", lhs >= rhs,
                 "2ab=" + format_double(lhs) + (lhs >= rhs ? " >= " : " < ") +
                     "gamma^2=" + format_double(rhs));
      break;
    }
  }
  const bool positive_domain = kind == VolKind::GBM || kind == VolKind::CIR;
  const bool inside = std::isfinite(y0) && (!positive_domain || y0 > 0.0);
  report.add("y0_in_domain", inside, "y0=" + format_double(y0));
  return report;
}

VolatilityModel::VolatilityModel(VolKind kind, std::span<const double> params, double y0)
    : kind_(kind), y0_(y0) {
  const auto report = check_volatility(kind, params, y0);
  for (const auto& c : report.checks) {
    if (!c.passed) {
      throw ConfigError(std::string(volest::to_string(kind)) + ": " + c.name + " violated" +
                        (c.detail.empty() ? "" : " (" + c.detail + ")"));
    }
  }
  std::copy(params.begin(), params.end(), params_.begin());
}

VolatilityModel VolatilityModel::bachelier(double alpha, double beta, double y0) {
  const std::array p{alpha, beta};
  return {VolKind::Bachelier, p, y0};
}

VolatilityModel VolatilityModel::vasicek(double a, double b, double gamma, double y0) {
  const std::array p{a, b, gamma};
  return {VolKind::Vasicek, p, y0};
}

VolatilityModel VolatilityModel::gbm(double alpha, double beta, double y0) {
  const std::array p{alpha, beta};
  return {VolKind::GBM, p, y0};
}

VolatilityModel VolatilityModel::cir(double a, double b, double gamma, double y0) {
  const std::array p{a, b, gamma};
  return {VolKind::CIR, p, y0};
}

double VolatilityModel::lower() const {
  return positive_domain() ? 0.0 : -std::numeric_limits<double>::infinity();
}

double VolatilityModel::upper() const { return std::numeric_limits<double>::infinity(); }

std::string VolatilityModel::to_string() const {
  std::string out(volest::to_string(kind_));
  out += '(';
  const auto p = params();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += format_double(p[i]);
  }
  return out + ')';
}

ValidationReport validate_spec(const ModelSpec& spec) {
  ValidationReport report = check_volatility(spec.vol.kind(), spec.vol.params(), spec.vol.y0());

  report.add("theta_finite", std::isfinite(spec.theta), "theta=" + format_double(spec.theta));
  report.add("rho_range", std::abs(spec.rho) <= 1.0, "rho=" + format_double(spec.rho));

  const auto profile = spec.sigma2.local_profile(spec.vol.lower(), spec.vol.upper());
  report.add("sigma2_locally_bounded", profile.defined && profile.locally_bounded,
             profile.defined && profile.locally_bounded ? "" : profile.reason);

  for (const auto* coef : {&spec.a, &spec.sigma1}) {
    const auto p = coef->local_profile(-std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity());
    if (!p.defined) {
      report.add(coef == &spec.a ? "a_defined" : "sigma1_defined", false, p.reason);
    }
  }

  if (spec.linear()) {
    report.add("linear_x0_nonzero", spec.x0 != 0.0, "x0=" + format_double(spec.x0));
  }
  const double s1 = spec.sigma1.in_domain(spec.x0) ? spec.sigma1(spec.x0) : 0.0;
  const double s2 = spec.sigma2.in_domain(spec.vol.y0()) ? spec.sigma2(spec.vol.y0()) : 0.0;
  const bool nondegenerate = std::isfinite(s1 * s2) && s1 * s2 != 0.0;
  report.add("initial_volatility_nonzero", nondegenerate,
             "sigma1(x0)*sigma2(y0)=" + format_double(s1 * s2));
  return report;
}

TimeGrid::TimeGrid(double horizon, double step) : horizon_(horizon), step_(step), steps_(0) {
  if (!(std::isfinite(horizon) && horizon > 0.0)) {
    throw ConfigError("horizon T must be positive, got " + format_double(horizon));
  }
  if (!(std::isfinite(step) && step > 0.0)) {
    throw ConfigError("step h must be positive, got " + format_double(step));
  }
  const double ratio = std::round(horizon / step);
  const double ulp = std::nextafter(horizon, std::numeric_limits<double>::infinity()) - horizon;
  if (ratio < 1.0 || std::abs(ratio * step - horizon) > ulp) {
    throw ConfigError("step h=" + format_double(step) + " does not divide T=" +
                      format_double(horizon));
  }
  steps_ = static_cast<Index>(ratio);
}

TimeGrid TimeGrid::prefix(Index steps) const {
  if (steps < 1 || steps > steps_) {
    throw ConfigError("prefix of " + std::to_string(steps) + " steps outside grid of " +
                      std::to_string(steps_));
  }
  return {time(steps), step_, steps};
}

}  // namespace volest
