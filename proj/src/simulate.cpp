#include "volest/simulate.hpp"

namespace volest {

PathPair simulate_pair(const ModelSpec& spec, const TimeGrid& grid, const NoiseStream& stream) {
  const Vector<double> dw1 = wiener_increments(grid, stream.with_substream(0));
  const Vector<double> dw3 = wiener_increments(grid, stream.with_substream(1));
  return integrate<double>(spec, grid, dw1, correlate(dw1, dw3, spec.rho));
}

}  // namespace volest
