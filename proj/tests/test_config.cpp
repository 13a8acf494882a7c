#include <sstream>

#include "config.hpp"
#include "doctest.h"

using dsft::cli::ConfigError;
using dsft::cli::parse_config;

namespace {

dsft::cli::RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "/cfg");
}

const char* kMinimal = "potential.kind = sech2\npotential.params = 2, 1\ngrid.x_min = -20\ngrid.x_max = 20\ngrid.n = 1000\n";

}  // namespace

TEST_CASE("config: minimal file and defaults") {
  const auto c = parse(std::string("# comment\n\n") + kMinimal);
  CHECK(c.potential_kind == "sech2");
  REQUIRE(c.potential_params.size() == 2);
  CHECK(c.potential_params[0] == 2.0);
  CHECK(c.n == 1000);
  CHECK(c.xi_max == 10.0);
  CHECK(c.n_xi == 512);
  CHECK_FALSE(c.multiplier.present);
  CHECK_FALSE(c.has_oracle_pad);
  CHECK(c.function.kind == "gaussian");
  CHECK(c.tol.kernel_vs_oracle == 1e-2);
}

TEST_CASE("config: full file") {
  const auto c = parse(std::string(kMinimal) +
                       "xi.max = 8   # trailing comment\nxi.n = 256\noracle.pad = 0\n"
                       "multiplier.kind = smooth_bump\nmultiplier.center = 2.5\nmultiplier.radius = 1.5\n"
                       "function.kind = sampled\nfunction.file = data/f.csv\ntolerance.route = 1e-9\n");
  CHECK(c.xi_max == 8.0);
  CHECK(c.n_xi == 256);
  CHECK(c.has_oracle_pad);
  CHECK(c.oracle_pad == 0);
  CHECK(c.multiplier.kind == "smooth_bump");
  CHECK(c.multiplier.radius == 1.5);
  CHECK(c.function.file == "/cfg/data/f.csv");
  CHECK(c.tol.route == 1e-9);
}

TEST_CASE("config: rejected input") {
  const std::string base = kMinimal;
  CHECK_THROWS_AS(parse("potential.kind = sech2\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "grid.n = 5\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "grid.spacing = 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "no equals sign\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "xi.n = 255\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "xi.max = nan\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "xi.max = 3x\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "multiplier.kind = heat\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "multiplier.kind = tent\nmultiplier.center = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "function.kind = sampled\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "function.width = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "tolerance.route = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse(base + "potential.file = v.csv\n"), ConfigError);
  CHECK_THROWS_AS(parse("potential.kind = harmonic\ngrid.x_min = -1\ngrid.x_max = 1\ngrid.n = 10\n"), ConfigError);
  CHECK_THROWS_AS(parse("potential.kind = zero\ngrid.x_min = 1\ngrid.x_max = -1\ngrid.n = 10\n"), ConfigError);
  CHECK_THROWS_AS(parse("potential.kind = sampled\ngrid.x_min = -1\ngrid.x_max = 1\ngrid.n = 10\n"), ConfigError);
}

TEST_CASE("config: sampled potential path is resolved against the config directory") {
  const auto c = parse("potential.kind = sampled\npotential.file = ../v.csv\ngrid.x_min = -1\ngrid.x_max = 1\ngrid.n = 10\n");
  CHECK(c.potential_file == "/v.csv");
}
