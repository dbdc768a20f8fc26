#include "volest/errors.hpp"

#include "volest/coef.hpp"

namespace volest {

DegenerateVolatilityError::DegenerateVolatilityError(std::int64_t node, double t, double x,
                                                     double y)
    : std::runtime_error("degenerate volatility at node " + std::to_string(node) +
                         " (t=" + format_double(t) + ", x=" + format_double(x) +
                         ", y=" + format_double(y) + ")"),
      node_(node),
      t_(t),
      x_(x),
      y_(y) {}

QuadratureError::QuadratureError(double estimate, double achieved_error)
    : std::runtime_error("adaptive quadrature did not reach tolerance: estimate " +
                         format_double(estimate) + ", error " + format_double(achieved_error)),
      estimate_(estimate),
      achieved_error_(achieved_error) {}

}  // namespace volest
