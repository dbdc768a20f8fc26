#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "volest/coef.hpp"

namespace volest {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class VolKind { Bachelier, Vasicek, GBM, CIR };

std::string_view to_string(VolKind kind);
VolKind parse_vol_kind(std::string_view name);
// 2 for Bachelier/GBM (alpha, beta), 3 for Vasicek/CIR (a, b, gamma).
std::size_t param_count(VolKind kind);

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const;
  const Check* find(std::string_view name) const;
  void add(std::string name, bool passed, std::string detail = {});
  std::string to_text() const;
};

// Structural checks on volatility parameters: count, beta != 0 / gamma > 0,
// CIR positivity and Feller condition 2ab >= gamma^2, y0 strictly inside J.
ValidationReport check_volatility(VolKind kind, std::span<const double> params, double y0);

// Driving diffusion of the volatility factor, dY = alpha(Y) dt + beta(Y) dW.
//
//   Bachelier  alpha(y) = alpha,        beta(y) = beta,          J = (-inf, inf)
//   Vasicek    alpha(y) = a (b - y),    beta(y) = gamma,         J = (-inf, inf)
//   GBM        alpha(y) = alpha y,      beta(y) = beta y,        J = (0, inf)
//   CIR        alpha(y) = a (b - y),    beta(y) = gamma sqrt(y), J = (0, inf)
class VolatilityModel {
 public:
  // Throws ConfigError naming the first failed check.
  VolatilityModel(VolKind kind, std::span<const double> params, double y0);

  static VolatilityModel bachelier(double alpha, double beta, double y0);
  static VolatilityModel vasicek(double a, double b, double gamma, double y0);
  static VolatilityModel gbm(double alpha, double beta, double y0);
  static VolatilityModel cir(double a, double b, double gamma, double y0);

  VolKind kind() const { return kind_; }
  std::span<const double> params() const { return {params_.data(), param_count(kind_)}; }
  double param(std::size_t i) const { return params_[i]; }
  double y0() const { return y0_; }

  // Open state interval J = (l, r).
  double lower() const;
  double upper() const;
  bool in_domain(double y) const { return lower() < y && y < upper(); }
  bool positive_domain() const { return kind_ == VolKind::GBM || kind_ == VolKind::CIR; }

  template <typename Scalar>
  Scalar drift(Scalar y) const {
    switch (kind_) {
      case VolKind::Bachelier:
        return Scalar(params_[0]);
      case VolKind::GBM:
        return Scalar(params_[0]) * y;
      case VolKind::Vasicek:
      case VolKind::CIR:
        break;
    }
    return Scalar(params_[0]) * (Scalar(params_[1]) - y);
  }

  template <typename Scalar>
  Scalar diffusion(Scalar y) const {
    using std::sqrt;
    switch (kind_) {
      case VolKind::Bachelier:
        return Scalar(params_[1]);
      case VolKind::GBM:
        return Scalar(params_[1]) * y;
      case VolKind::Vasicek:
        return Scalar(params_[2]);
      case VolKind::CIR:
        break;
    }
    return Scalar(params_[2]) * sqrt(y);
  }

  // e.g. `cir(1,2,1)`
  std::string to_string() const;
  bool operator==(const VolatilityModel&) const = default;

 private:
  VolKind kind_;
  std::array<double, 3> params_{};
  double y0_;
};

// dX = theta a(t,X) dt + sigma1(t,X) sigma2(t,Y) dW,  dW dW2 = rho dt,
// with Y driven by W2 = rho W + sqrt(1 - rho^2) W3.
struct ModelSpec {
  double theta = 2.0;
  CoefFn a = CoefFn::identity();
  CoefFn sigma1 = CoefFn::identity();
  CoefFn sigma2 = CoefFn::constant(1.0);
  VolatilityModel vol = VolatilityModel::bachelier(0.0, 1.0, 1.0);
  double x0 = 1.0;
  double rho = 0.0;

  // a(t,x) = x and sigma1(t,x) = x.
  bool linear() const { return a.is_identity() && sigma1.is_identity(); }
  bool operator==(const ModelSpec&) const = default;
};

ValidationReport validate_spec(const ModelSpec& spec);

// Uniform partition 0 = t_0 < ... < t_n = T with t_k = k h.
class TimeGrid {
 public:
  // Throws ConfigError unless T > 0, h > 0 and T/h is an integer up to rounding.
  TimeGrid(double horizon, double step);

  double horizon() const { return horizon_; }
  double step() const { return step_; }
  Index steps() const { return steps_; }
  double time(Index k) const { return static_cast<double>(k) * step_; }

  // Grid with the same step and fewer steps.
  TimeGrid prefix(Index steps) const;

  bool operator==(const TimeGrid&) const = default;

 private:
  TimeGrid(double horizon, double step, Index steps)
      : horizon_(horizon), step_(step), steps_(steps) {}

  double horizon_;
  double step_;
  Index steps_;
};

}  // namespace volest
