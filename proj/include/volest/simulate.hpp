#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "volest/errors.hpp"
#include "volest/models.hpp"
#include "volest/noise.hpp"

namespace volest {

// Positive-domain states that would land at or below zero are clamped here.
inline constexpr double kPositiveFloor = 1e-12;

// Synchronised trajectories on a uniform grid. `dw` holds the increments of
// the driver of X; it is empty for externally observed paths.
template <typename Scalar>
struct BasicPathPair {
  TimeGrid grid;
  Vector<Scalar> x;
  Vector<Scalar> y;
  Vector<Scalar> dw;
  Index clamp_count = 0;

  bool has_increments() const { return dw.size() == grid.steps(); }
};

using PathPair = BasicPathPair<double>;

// dw2 = rho dw1 + sqrt(1 - rho^2) dw3
template <typename Derived1, typename Derived2>
auto correlate(const Eigen::MatrixBase<Derived1>& dw1, const Eigen::MatrixBase<Derived2>& dw3,
               double rho) {
  using Scalar = typename Derived1::Scalar;
  if (dw1.size() != dw3.size()) {
    throw std::invalid_argument("correlate: length mismatch " + std::to_string(dw1.size()) +
                                " vs " + std::to_string(dw3.size()));
  }
  if (!(std::abs(rho) <= 1.0)) throw ConfigError("correlate: |rho| must be <= 1");
  const Scalar r(rho);
  const Scalar c = std::sqrt(Scalar(1) - r * r);
  return Vector<Scalar>(r * dw1 + c * dw3);
}

namespace detail {

template <typename Scalar>
Scalar step_volatility(const VolatilityModel& vol, Scalar y, Scalar h, Scalar dw) {
  using std::max, std::sqrt;
  if (vol.kind() == VolKind::CIR) {
    // full truncation
    const Scalar yp = max(y, Scalar(0));
    return y + Scalar(vol.param(0)) * (Scalar(vol.param(1)) - yp) * h +
           Scalar(vol.param(2)) * sqrt(yp) * dw;
  }
  return y + vol.drift(y) * h + vol.diffusion(y) * dw;
}

}  // namespace detail

// Euler scheme with left-point coefficients, Y stepped first:
//   y[k+1] = y[k] + alpha(y[k]) h + beta(y[k]) dw2[k]
//   x[k+1] = x[k] + theta a(t_k, x[k]) h + sigma1(t_k, x[k]) sigma2(y[k]) dw1[k]
// Throws NonFiniteStateError naming the first step with a non-finite state.
template <typename Scalar>
BasicPathPair<Scalar> integrate(const ModelSpec& spec, const TimeGrid& grid,
                                const Vector<Scalar>& dw1, const Vector<Scalar>& dw2) {
  const Index n = grid.steps();
  if (dw1.size() != n || dw2.size() != n) {
    throw std::invalid_argument("integrate: increments do not match the grid");
  }
  BasicPathPair<Scalar> path{grid, Vector<Scalar>(n + 1), Vector<Scalar>(n + 1), dw1, 0};
  const Scalar h(grid.step());
  const Scalar theta(spec.theta);
  const Scalar floor(kPositiveFloor);
  const bool positive = spec.vol.positive_domain();

  Scalar x(spec.x0);
  Scalar y(spec.vol.y0());
  path.x[0] = x;
  path.y[0] = y;
  for (Index k = 0; k < n; ++k) {
    const Scalar t(grid.time(k));
    Scalar y_next = detail::step_volatility(spec.vol, y, h, dw2[k]);
    const Scalar x_next =
        x + theta * spec.a(t, x) * h + spec.sigma1(t, x) * spec.sigma2(t, y) * dw1[k];
    if (!std::isfinite(static_cast<double>(x_next)) ||
        !std::isfinite(static_cast<double>(y_next))) {
      throw NonFiniteStateError(k, "non-finite state at step " + std::to_string(k) +
                                       " (t=" + format_double(grid.time(k)) + ")");
    }
    if (positive && y_next <= Scalar(0)) {
      y_next = floor;
      ++path.clamp_count;
    }
    x = x_next;
    y = y_next;
    path.x[k + 1] = x;
    path.y[k + 1] = y;
  }
  return path;
}

// Substream 0 drives X, substream 1 is the independent W3 that is mixed
// into the volatility driver.
PathPair simulate_pair(const ModelSpec& spec, const TimeGrid& grid, const NoiseStream& stream);

}  // namespace volest
