#include <doctest.h>

#include <sstream>

#include "volest/config.hpp"
#include "volest/errors.hpp"
#include "volest/io.hpp"

using namespace volest;

TEST_CASE("defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.spec.theta == 2.0);
  CHECK(c.spec.rho == 0.0);
  CHECK(c.spec.linear());
  CHECK(c.T == 10.0);
  CHECK(c.effective_horizons() == std::vector<double>{10.0});
}

TEST_CASE("parsing a full configuration") {
  const RunConfig c = parse_config(R"(# comment
theta = 1.5
sigma2=sqrty(1)
vol.kind=cir
vol.params = 1, 2, 1
y0=0.5
rho=-0.25

horizons=1,2,5
h=0.01
n_paths=7
seed=99
)");
  CHECK(c.spec.theta == 1.5);
  CHECK(c.spec.sigma2 == CoefFn(coef::SqrtY{1.0}));
  CHECK(c.spec.vol == VolatilityModel::cir(1.0, 2.0, 1.0, 0.5));
  CHECK(c.spec.rho == -0.25);
  CHECK(c.effective_horizons() == std::vector<double>{1.0, 2.0, 5.0});
  CHECK(c.n_paths == 7);
  CHECK(c.seed == 99);
  const auto e = c.experiment(2);
  CHECK(e.threads == 2);
  CHECK(e.h == 0.01);
  CHECK(e.master_seed == 99);
}

TEST_CASE("echo round-trips") {
  ConfigMap m;
  m.merge_text("sigma2=sinshift(2,1)\nvol.kind=vasicek\nvol.params=-1,0,1\nrho=0.1\nh=0.0001\nT=3");
  m.apply_override("theta=0.30000000000000004");
  const RunConfig c = m.resolve();
  CHECK(parse_config(echo_config(c, "")) == c);
  // the commented form used in output headers is ignored by the parser
  CHECK(parse_config(echo_config(c)) == RunConfig{});
  const std::string echo = echo_config(c, "");
  CHECK(echo.find("theta=0.30000000000000004\n") != std::string::npos);
  CHECK(echo.rfind("theta=", 0) == 0);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(parse_config("thetta=2"), ConfigError);
  CHECK_THROWS_AS(parse_config("theta"), ConfigError);
  CHECK_THROWS_AS(parse_config("theta=abc"), ConfigError);
  CHECK_THROWS_AS(parse_config("vol.kind=heston"), ConfigError);
  CHECK_THROWS_AS(parse_config("vol.kind=cir\nvol.params=1,0.1,1"), ConfigError);
  CHECK_THROWS_AS(parse_config("n_paths=-3"), ConfigError);
  CHECK_THROWS_AS(parse_config("T=1\nh=0.3"), ConfigError);
  try {
    parse_config("theta=1\n\nbogus=2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  ConfigMap m;
  CHECK_THROWS_AS(m.apply_override("noequals"), ConfigError);
}

TEST_CASE("path CSV round trip") {
  ModelSpec spec;
  spec.vol = VolatilityModel::gbm(1.0, 2.0, 1.0);
  spec.sigma2 = coef::SqrtY{1.0};
  const TimeGrid grid(1.0, 0.01);
  const PathPair path = simulate_pair(spec, grid, {1, 2});
  std::stringstream ss;
  ss << "# a comment\n";
  write_path_csv(ss, path);
  const PathPair back = read_path_csv(ss);
  CHECK(back.x == path.x);
  CHECK(back.y == path.y);
  CHECK(back.dw == path.dw);
  CHECK(back.grid.steps() == 100);

  std::stringstream observed("t,x,y,dw\n0,1,1,\n0.5,1.2,1,\n1,1.5,1,\n");
  const PathPair obs = read_path_csv(observed);
  CHECK_FALSE(obs.has_increments());
  CHECK(obs.x[2] == 1.5);

  std::stringstream bad_grid("t,x,y,dw\n0,1,1,\n0.5,1.2,1,\n1.2,1.5,1,\n");
  CHECK_THROWS_AS(read_path_csv(bad_grid), ConfigError);
  std::stringstream bad_header("t,x,z\n0,1,1\n");
  CHECK_THROWS_AS(read_path_csv(bad_header), ConfigError);
}
