#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace volest {

// Malformed configuration or invalid model parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside the state domain of a coefficient or diffusion.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simulation produced a non-finite state.
class NonFiniteStateError : public std::runtime_error {
 public:
  NonFiniteStateError(std::int64_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

// sigma1 * sigma2 vanished (or x vanished for the linear estimator) at a node.
class DegenerateVolatilityError : public std::runtime_error {
 public:
  DegenerateVolatilityError(std::int64_t node, double t, double x, double y);
  std::int64_t node() const noexcept { return node_; }
  double t() const noexcept { return t_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  std::int64_t node_;
  double t_, x_, y_;
};

// The quadratic-variation denominator is zero.
class NoInformationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation needs the driving increments, which observed data does not carry.
class UnsupportedForObservedDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(double estimate, double achieved_error);
  double estimate() const noexcept { return estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double estimate_, achieved_error_;
};

// |rho| = 1 makes the joint diffusion matrix singular.
class DegenerateCorrelationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every path of a Monte-Carlo experiment tripped a guard.
class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace volest
