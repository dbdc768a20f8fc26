#pragma once

// Maximum-likelihood drift estimator
//
//   theta_hat_T = int_0^T f dX / int_0^T g^2 dt,
//   f = a / (sigma1^2 sigma2^2),  g = a / (sigma1 sigma2),
//
// with both integrals discretised by left-point sums on the path grid. On a
// path produced by the Euler scheme the increments satisfy
// dX_k = theta a h + sigma1 sigma2 dW_k exactly, so
// theta_hat - theta = sum g dW / sum g^2 h holds in discrete time too.

#include <cmath>
#include <string>

#include "volest/errors.hpp"
#include "volest/models.hpp"
#include "volest/numeric.hpp"
#include "volest/simulate.hpp"

namespace volest {

template <typename Scalar>
struct BasicEstimateResult {
  Scalar theta_hat;
  Scalar numerator;    // sum_k f_k (x_{k+1} - x_k)
  Scalar denominator;  // sum_k g_k^2 h, the quadratic variation <M>_T
  double T;
  Index n_used;
};

using EstimateResult = BasicEstimateResult<double>;

template <typename Scalar>
struct FG {
  Scalar f;
  Scalar g;
};

// Throws DegenerateVolatilityError (node -1) when sigma1 sigma2 vanishes.
template <typename Scalar>
FG<Scalar> f_g_eval(const ModelSpec& spec, Scalar t, Scalar x, Scalar y) {
  const Scalar a = spec.a(t, x);
  const Scalar vol = spec.sigma1(t, x) * spec.sigma2(t, y);
  if (vol == Scalar(0) || !std::isfinite(static_cast<double>(vol))) {
    throw DegenerateVolatilityError(-1, static_cast<double>(t), static_cast<double>(x),
                                    static_cast<double>(y));
  }
  return {a / (vol * vol), a / vol};
}

namespace detail {

inline void check_steps(const TimeGrid& grid, Index steps, Index x_size) {
  if (steps < 1 || steps > grid.steps() || x_size < grid.steps() + 1) {
    throw std::invalid_argument("estimate: " + std::to_string(steps) +
                                " steps requested on a path of " + std::to_string(grid.steps()));
  }
}

template <typename Scalar>
BasicEstimateResult<Scalar> finish(const CompensatedSum<Scalar>& num,
                                   const CompensatedSum<Scalar>& den, const TimeGrid& grid,
                                   Index steps) {
  const Scalar d = den.value();
  if (d == Scalar(0)) throw NoInformationError("estimate: zero quadratic variation");
  const Scalar n = num.value();
  return {n / d, n, d, grid.time(steps), steps};
}

}  // namespace detail

// Estimate from the first `steps` increments of the path.
template <typename Scalar>
BasicEstimateResult<Scalar> estimate_theta(const ModelSpec& spec,
                                           const BasicPathPair<Scalar>& path, Index steps) {
  detail::check_steps(path.grid, steps, path.x.size());
  const Scalar h(path.grid.step());
  CompensatedSum<Scalar> num, den;
  for (Index k = 0; k < steps; ++k) {
    const Scalar t(path.grid.time(k));
    FG<Scalar> fg;
    try {
      fg = f_g_eval(spec, t, path.x[k], path.y[k]);
    } catch (const DegenerateVolatilityError& e) {
      throw DegenerateVolatilityError(k, e.t(), e.x(), e.y());
    }
    num.add(fg.f * (path.x[k + 1] - path.x[k]));
    den.add(fg.g * fg.g * h);
  }
  return detail::finish(num, den, path.grid, steps);
}

template <typename Scalar>
BasicEstimateResult<Scalar> estimate_theta(const ModelSpec& spec,
                                           const BasicPathPair<Scalar>& path) {
  return estimate_theta(spec, path, path.grid.steps());
}

// Linear model a = sigma1 = x:
//   theta_hat = sum x_k^-1 sigma2(y_k)^-2 dx_k / sum sigma2(y_k)^-2 h
template <typename Scalar>
BasicEstimateResult<Scalar> estimate_theta_linear(const CoefFn& sigma2,
                                                  const BasicPathPair<Scalar>& path,
                                                  Index steps) {
  detail::check_steps(path.grid, steps, path.x.size());
  const Scalar h(path.grid.step());
  CompensatedSum<Scalar> num, den;
  for (Index k = 0; k < steps; ++k) {
    const Scalar x = path.x[k];
    const Scalar s = sigma2(path.y[k]);
    if (x == Scalar(0) || s == Scalar(0) || !std::isfinite(static_cast<double>(s))) {
      throw DegenerateVolatilityError(k, path.grid.time(k), static_cast<double>(x),
                                      static_cast<double>(path.y[k]));
    }
    const Scalar inv_s2 = Scalar(1) / (s * s);
    num.add(inv_s2 / x * (path.x[k + 1] - x));
    den.add(inv_s2 * h);
  }
  return detail::finish(num, den, path.grid, steps);
}

template <typename Scalar>
BasicEstimateResult<Scalar> estimate_theta_linear(const CoefFn& sigma2,
                                                  const BasicPathPair<Scalar>& path) {
  return estimate_theta_linear(sigma2, path, path.grid.steps());
}

// M_T / <M>_T = sum g dW / sum g^2 h; requires the simulated increments.
template <typename Scalar>
Scalar martingale_ratio(const ModelSpec& spec, const BasicPathPair<Scalar>& path, Index steps) {
  if (!path.has_increments()) {
    throw UnsupportedForObservedDataError(
        "martingale_ratio needs the driving increments of a synthetic path");
  }
  detail::check_steps(path.grid, steps, path.x.size());
  const Scalar h(path.grid.step());
  CompensatedSum<Scalar> mart, qv;
  for (Index k = 0; k < steps; ++k) {
    FG<Scalar> fg;
    try {
      fg = f_g_eval(spec, Scalar(path.grid.time(k)), path.x[k], path.y[k]);
    } catch (const DegenerateVolatilityError& e) {
      throw DegenerateVolatilityError(k, e.t(), e.x(), e.y());
    }
    mart.add(fg.g * path.dw[k]);
    qv.add(fg.g * fg.g * h);
  }
  if (qv.value() == Scalar(0)) throw NoInformationError("martingale_ratio: zero quadratic variation");
  return mart.value() / qv.value();
}

template <typename Scalar>
Scalar martingale_ratio(const ModelSpec& spec, const BasicPathPair<Scalar>& path) {
  return martingale_ratio(spec, path, path.grid.steps());
}

}  // namespace volest
