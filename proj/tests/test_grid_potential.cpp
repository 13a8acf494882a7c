#include <cmath>
#include <vector>

#include "doctest.h"
#include "dsft/error.hpp"
#include "dsft/ode.hpp"
#include "dsft/potential.hpp"
#include "support.hpp"

using namespace dsft;
using doctest::Approx;

namespace {

Potential preset(const char* name, std::vector<double> p = {}) { return make_preset(name, p); }

double trapezoid_abs(const Potential& v, const GridSpec& g, int power) {
  auto s = v.sample(g);
  auto w = g.trapezoid_weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += w[i] * std::pow(std::abs(s[i]), power);
  return power == 1 ? sum : std::sqrt(sum);
}

}  // namespace

TEST_CASE("grid spec basics") {
  GridSpec g{-1.0, 1.0, 5};
  CHECK(g.step() == Approx(0.5));
  CHECK(g.point(0) == -1.0);
  CHECK(g.point(4) == 1.0);
  auto w = g.trapezoid_weights();
  CHECK(w[0] == Approx(0.25));
  CHECK(w[2] == Approx(0.5));

  CHECK_THROWS_AS((GridSpec{1.0, -1.0, 5}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{-1.0, 1.0, 2}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{0.0, INFINITY, 10}.validate()), Error);

  try {
    require_size(g, 4, "f");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridMismatch);
  }
}

TEST_CASE("zero potential") {
  auto v = preset("zero");
  CHECK(v.is_zero());
  CHECK(v.norm_l1() == 0.0);
  CHECK(v.norm_l2() == 0.0);
  for (double s : v.sample({-3, 3, 31})) CHECK(s == 0.0);
  CHECK(Potential{}.is_zero());
}

TEST_CASE("sech2 preset norms and samples") {
  auto v = preset("sech2", {2, 1});
  CHECK(v.norm_l1() == Approx(4.0).epsilon(1e-12));
  CHECK(v.norm_l2() == Approx(std::sqrt(16.0 / 3.0)).epsilon(1e-12));
  CHECK(v(0.0) == Approx(-2.0));

  // quadrature over the sampled profile
  double l1 = test::gauss_legendre([&](double x) { return std::abs(v(x)); }, -40, 40, 400);
  CHECK(l1 == Approx(4.0).epsilon(1e-9));

  auto s = v.sample({-5, 5, 11});
  CHECK(s[5] == Approx(-2.0));
}

TEST_CASE("square well preset") {
  auto v = preset("square_well", {1, 1});
  CHECK(v.norm_l1() == Approx(2.0));
  CHECK(v.norm_l2() == Approx(std::sqrt(2.0)));
  CHECK(v(1.5) == 0.0);
  CHECK(v(-1.5) == 0.0);
  CHECK(v(0.3) == -1.0);
  CHECK(v(1.0) == -0.5);
  CHECK(v.support_radius() == Approx(1.0));
  REQUIRE(v.jumps().size() == 2);

  // jump on a node with the midpoint value makes the trapezoid exact here
  CHECK(trapezoid_abs(v, {-3, 3, 61}, 1) == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("gaussian well preset") {
  auto v = preset("gaussian_well", {2, 1});
  const double l1 = 2.0 * std::sqrt(std::numbers::pi);
  CHECK(v.norm_l1() == Approx(l1).epsilon(1e-12));
  double l2 = std::sqrt(test::gauss_legendre([&](double x) { return v(x) * v(x); }, -20, 20, 200));
  CHECK(v.norm_l2() == Approx(l2).epsilon(1e-10));
}

TEST_CASE("quadrature of |V| converges to the stored norms") {
  for (auto v : {preset("sech2", {2, 1}), preset("gaussian_well", {2, 1}),
                 preset("square_well", {1, 0.95})}) {
    CAPTURE(v.name());
    for (std::size_t n : {1601, 3201, 6401})
      CHECK(trapezoid_abs(v, {-20, 20, n}, 1) == Approx(v.norm_l1()).epsilon(0.01));
    CHECK(trapezoid_abs(v, {-20, 20, 1601}, 2) == Approx(v.norm_l2()).epsilon(0.01));
  }
}

TEST_CASE("truncation beyond the support radius") {
  for (auto v : {preset("sech2", {2, 1}), preset("sech2", {0.5, 3}), preset("gaussian_well", {2, 1}),
                 preset("gaussian_well", {5, 0.3}), preset("square_well", {1, 1})}) {
    CAPTURE(v.name());
    const double r = v.support_radius();
    CHECK(r > 0.0);
    for (double x = r + 1e-9; x < r + 30.0; x += 0.01) {
      CHECK(std::abs(v(x)) <= kTruncationTol * (1 + 1e-12));
      CHECK(std::abs(v(-x)) <= kTruncationTol * (1 + 1e-12));
    }
  }
}

TEST_CASE("sampled potential") {
  auto v = make_preset("sampled", std::vector<double>{-1, 0.5, 0, -1, -2, -1, 0});
  CHECK(v(0.0) == Approx(-2.0));
  CHECK(v(0.25) == Approx(-1.5));
  CHECK(v(1.5) == 0.0);
  CHECK(v.norm_l1() == Approx(2.0));
  double l2sq = test::gauss_legendre([&](double x) { return v(x) * v(x); }, -1, 1, 64);
  CHECK(v.norm_l2() == Approx(std::sqrt(l2sq)).epsilon(1e-10));

  auto w = Potential::sampled({-1, 0, 2}, {1, -1, 1});
  CHECK(w.jumps().size() == 2);
  CHECK(w(-1.0) == Approx(0.5));
  CHECK(w(3.0) == 0.0);
}

TEST_CASE("preset errors") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode{};
  };
  CHECK(code([] { preset("coulomb", {1}); }) == ErrorCode::InvalidArgument);
  CHECK(code([] { preset("sech2", {1}); }) == ErrorCode::InvalidArgument);
  CHECK(code([] { preset("sech2", {1, 0}); }) == ErrorCode::InvalidArgument);
  CHECK(code([] { preset("gaussian_well", {1, -1}); }) == ErrorCode::InvalidArgument);
  CHECK(code([] { preset("square_well", {NAN, 1}); }) == ErrorCode::InvalidArgument);
  CHECK(code([] { Potential::sampled({0, 1}, {0, INFINITY}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Dormand-Prince integrator on an oscillator") {
  using Y = std::array<std::complex<double>, 2>;
  auto rhs = [](double, const Y& y, Y& dy) {
    dy[0] = y[1];
    dy[1] = -4.0 * y[0];
  };
  Dopri5<2, decltype(rhs)> ode(rhs, 0.0, Y{cd{1, 0}, cd{0, 2}});
  for (double x : {0.5, 3.0, 7.25, 10.0}) {
    ode.advance_to(x);
    CHECK(ode.x() == x);
    const cd exact = std::exp(cd{0, 2 * x});
    CHECK(std::abs(ode.state()[0] - exact) < 1e-8);
  }
  ode.advance_to(-2.0);
  CHECK(std::abs(ode.state()[0] - std::exp(cd{0, -4.0})) < 1e-8);
}

TEST_CASE("integrator recovers its step after a very short leg") {
  using Y = std::array<std::complex<double>, 2>;
  auto rhs = [](double, const Y& y, Y& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  Dopri5<2, decltype(rhs)> ode(rhs, -4.9000000000000004, Y{cd{1, 0}, cd{0, 0}});
  ode.advance_to(-4.8999999999999986);
  ode.advance_to(0.0);
  CHECK(std::abs(ode.state()[0] - std::cos(4.9000000000000004)) < 1e-8);
}

TEST_CASE("integrator rejects non-finite states") {
  using Y = std::array<std::complex<double>, 1>;
  auto rhs = [](double x, const Y&, Y& dy) { dy[0] = 1.0 / (x - 1.0); };
  Dopri5<1, decltype(rhs)> ode(rhs, 0.0, Y{cd{0, 0}});
  CHECK_THROWS_AS(ode.advance_to(2.0), Error);
}
