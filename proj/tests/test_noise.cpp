#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "volest/noise.hpp"
#include "volest/numeric.hpp"

using namespace volest;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::encrypt(C{0, 0, 0, 0}, K{0, 0}) ==
        C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::encrypt(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                            K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::encrypt(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                            K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal quantile against reference values") {
  struct Ref {
    double p, z;
  };
  const Ref refs[] = {{1e-300, -37.0470962993612},      {1e-20, -9.262340089798409},
                      {1e-10, -6.361340902404056},      {0.001, -3.090232306167813},
                      {0.02425, -1.972961051311885},    {0.1, -1.2815515655446004},
                      {0.3, -0.5244005127080409},       {0.7, 0.5244005127080407},
                      {0.975, 1.959963984540054},       {0.999999, 4.753424308817087},
                      {1.0 - 1e-12, 7.0344869100478356}};
  for (const auto& r : refs) {
    CAPTURE(r.p);
    CHECK(normal_quantile(r.p) == doctest::Approx(r.z).epsilon(1e-13));
  }
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(std::isinf(normal_quantile(0.0)));
  CHECK(std::isnan(normal_quantile(1.5)));
}

TEST_CASE("normal quantile inverts the CDF") {
  const double eps = std::numeric_limits<double>::epsilon();
  for (double z = -8.0; z <= 8.0; z += 0.01) {
    const double p = 0.5 * std::erfc(-z / std::sqrt(2.0));
    // rounding p moves z by about eps p / phi(z), which dominates in the upper tail
    const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
    const double tol = 1e-13 * std::max(1.0, std::abs(z)) + 4.0 * eps * p / phi;
    REQUIRE(std::abs(normal_quantile(p) - z) <= tol);
  }
}

TEST_CASE("uniforms lie strictly inside (0, 1)") {
  const NoiseStream s{3, 4, 0};
  for (std::uint64_t j = 0; j < 100000; ++j) {
    const double u = s.uniform(j);
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("increments have mean 0 and variance h") {
  const TimeGrid grid(1e6, 1.0);
  const auto dw = wiener_increments(grid, {11, 0, 0});
  const std::span<const double> s(dw.data(), static_cast<std::size_t>(dw.size()));
  const double mean = pairwise_sum(s) / 1e6;
  std::vector<double> sq(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) sq[i] = (s[i] - mean) * (s[i] - mean);
  const double var = pairwise_sum(std::span<const double>(sq)) / (1e6 - 1);
  CHECK(std::abs(mean) < 4e-3);
  CHECK(std::abs(var - 1.0) < 0.01);

  const TimeGrid fine(10.0, 1e-3);
  const auto small = wiener_increments(fine, {11, 0, 0});
  // same deviates, scaled by sqrt(h)
  CHECK(small[5] == doctest::Approx(dw[5] * std::sqrt(1e-3)).epsilon(1e-14));
}

TEST_CASE("streams are pure functions of their coordinates") {
  const NoiseStream a{42, 7, 1};
  std::vector<double> first(64), second(64);
  a.fill_normal(100, first);
  NoiseStream{42, 7, 1}.fill_normal(100, second);
  CHECK(first == second);
  for (int i = 0; i < 64; ++i) CHECK(first[i] == a.normal(100 + i));

  // distinct path, seed and substream give distinct draws
  CHECK(a.normal(0) != NoiseStream{42, 8, 1}.normal(0));
  CHECK(a.normal(0) != NoiseStream{43, 7, 1}.normal(0));
  CHECK(a.normal(0) != a.with_substream(0).normal(0));
  // paths beyond 2^32 are still distinct
  CHECK(NoiseStream{1, 1}.normal(0) != NoiseStream{1, (1ull << 32) + 1}.normal(0));
}

TEST_CASE("neighbouring substreams are uncorrelated") {
  const NoiseStream s0{5, 0, 0};
  const NoiseStream s1{5, 0, 1};
  double acc = 0.0;
  const int n = 200000;
  for (int j = 0; j < n; ++j) acc += s0.normal(j) * s1.normal(j);
  CHECK(std::abs(acc / n) < 5.0 / std::sqrt(double(n)));
}
