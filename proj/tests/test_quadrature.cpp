#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "kgsharp/quadrature.hpp"

using namespace kgsharp;
using quad::QuadratureConfig;

TEST_CASE("polynomials are integrated exactly") {
  const auto r = quad::integrate_1d([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 2.0, {});
  CHECK(r.value == doctest::Approx(3.75).epsilon(1e-14));
  CHECK(r.converged);
}

TEST_CASE("declared endpoint exponents absorb inverse square roots") {
  quad::EndpointBehavior ends;
  ends.left_exponent = -0.5;
  ends.right_exponent = -0.5;
  const auto r = quad::integrate_1d([](double x) { return 1.0 / std::sqrt((1.0 - x) * (1.0 + x)); }, -1.0, 1.0, {},
                                    ends);
  CHECK(r.value == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(r.converged);

  quad::EndpointBehavior left;
  left.left_exponent = -0.5;
  const auto s = quad::integrate_1d([](double x) { return std::cos(x) / std::sqrt(x); }, 0.0, 1.0, {}, left);
  CHECK(s.value == doctest::Approx(1.8090484758005458).epsilon(1e-12));
}

TEST_CASE("breakpoints resolve jumps") {
  quad::EndpointBehavior ends;
  ends.breakpoints = {0.3};
  const auto r = quad::integrate_1d([](double x) { return x < 0.3 ? 1.0 : 2.0; }, 0.0, 1.0, {}, ends);
  CHECK(r.value == doctest::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("semi-infinite ranges") {
  quad::SemiInfiniteOptions opts;
  const auto r = quad::integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, {}, opts);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  opts.scale = 5.0;
  const auto p = quad::integrate_semi_infinite([](double x) { return std::pow(1.0 + x * x, -4.0); }, 0.0, {}, opts);
  CHECK(p.value == doctest::Approx(5.0 * std::numbers::pi / 32.0).epsilon(1e-10));
  CHECK(p.converged);
}

TEST_CASE("an identically zero tail converges to zero") {
  const auto r = quad::integrate_semi_infinite([](double) { return 0.0; }, 0.0, {}, {});
  CHECK(r.value == 0.0);
  CHECK(r.converged);
}

TEST_CASE("nested integrals propagate inner errors") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  const auto r = quad::integrate_1d_nested(
      [&](double x) {
        const auto in = quad::integrate_1d([x](double y) { return std::exp(-x * y); }, 0.0, 1.0, cfg.inner());
        return quad::Sample{in.value, in.error_estimate};
      },
      0.0, 1.0, cfg);
  // int_0^1 (1 - e^{-x}) / x dx = Ein(1)
  CHECK(r.value == doctest::Approx(0.7965995992970531).epsilon(1e-10));
  CHECK(r.error_estimate >= 0.0);
}

TEST_CASE("iterated integrals over dependent bounds") {
  // Triangle 0 <= y <= x <= 1 of x y: 1/8.
  const std::array<quad::AxisBounds, 2> axes = {
      quad::AxisBounds{[](std::span<const double>) { return std::pair{0.0, 1.0}; }, {}, 1.0},
      quad::AxisBounds{[](std::span<const double> o) { return std::pair{0.0, o[0]}; }, {}, 1.0}};
  const auto r = quad::integrate_iterated([](std::span<const double> x) { return x[0] * x[1]; }, axes, {});
  CHECK(r.value == doctest::Approx(0.125).epsilon(1e-13));

  // Unit ball volume through an infinite-free 3D iteration, with an empty inner range.
  const std::array<quad::AxisBounds, 3> ball = {
      quad::AxisBounds{[](std::span<const double>) { return std::pair{-1.0, 1.0}; }, {}, 1.0},
      quad::AxisBounds{[](std::span<const double> o) {
                         const double h = std::sqrt(std::max(0.0, 1.0 - o[0] * o[0]));
                         return std::pair{-h, h};
                       },
                       {},
                       1.0},
      quad::AxisBounds{[](std::span<const double> o) {
                         const double h = std::sqrt(std::max(0.0, 1.0 - o[0] * o[0] - o[1] * o[1]));
                         return std::pair{-h, h};
                       },
                       {},
                       1.0}};
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-8;
  const auto v = quad::integrate_iterated([](std::span<const double>) { return 1.0; }, ball, cfg);
  CHECK(v.value == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-6));
}

TEST_CASE("empty ranges and bad configurations") {
  const std::array<quad::AxisBounds, 2> axes = {
      quad::AxisBounds{[](std::span<const double>) { return std::pair{1.0, 1.0}; }, {}, 1.0},
      quad::AxisBounds{[](std::span<const double>) { return std::pair{0.0, 1.0}; }, {}, 1.0}};
  CHECK(quad::integrate_iterated([](std::span<const double>) { return 1.0; }, axes, {}).value == 0.0);

  QuadratureConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(quad::integrate_1d([](double x) { return 1.0 / (x - 0.5); }, 0.0, 0.5, {}), quad::NonFiniteIntegrand);
}
