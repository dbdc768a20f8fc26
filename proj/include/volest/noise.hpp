#pragma once

#include <array>
#include <cstdint>

#include "volest/models.hpp"

namespace volest {

// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter encrypt(Counter ctr, Key key);
};

// Inverse of the standard normal CDF (Wichura, AS 241, ~1e-16 relative).
double normal_quantile(double p);

// Deviate j of a stream is a pure function of (master_seed, path_index,
// substream, j). Substreams separate the independent drivers of one path.
struct NoiseStream {
  std::uint64_t master_seed = 0;
  std::uint64_t path_index = 0;
  std::uint32_t substream = 0;

  NoiseStream with_substream(std::uint32_t s) const { return {master_seed, path_index, s}; }

  // Uniform in the open interval (0, 1) with 53 random bits.
  double uniform(std::uint64_t j) const;
  double normal(std::uint64_t j) const { return normal_quantile(uniform(j)); }

  // Fills out[i] = normal(first + i).
  void fill_normal(std::uint64_t first, std::span<double> out) const;
};

// n i.i.d. N(0, h) increments.
Vector<double> wiener_increments(const TimeGrid& grid, const NoiseStream& stream);

}  // namespace volest
