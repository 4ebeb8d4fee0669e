#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kgsharp/kernel.hpp"
#include "kgsharp/rng.hpp"
#include "symbolic.hpp"

using namespace kgsharp;
using kgsharp::testing::kg_monomial;
using kgsharp::testing::Monomial;
using kgsharp::testing::Rational;
using kgsharp::testing::sphere_monomial;

namespace {

double to_double(const Monomial& m) {
  return static_cast<double>(m.coeff.num) / static_cast<double>(m.coeff.den) *
         std::pow(2.0, static_cast<double>(m.two.num) / static_cast<double>(m.two.den)) *
         std::pow(std::numbers::pi, static_cast<double>(m.pi));
}

}  // namespace

TEST_CASE("dispersion relation") {
  CHECK(phi(Mass(1.0), 0.0) == 1.0);
  CHECK(phi(Mass(3.0), 4.0) == doctest::Approx(5.0));
  CHECK(phi(Mass(0.0), 2.5) == 2.5);
  CHECK_THROWS_AS(Mass(-1.0), DomainError);
  CHECK_THROWS_AS(Dimension(0), DomainError);
  CHECK_THROWS_AS(Mass(std::nan("")), DomainError);
}

TEST_CASE("sphere measures") {
  CHECK(sphere_measure(Dimension(1)) == doctest::Approx(2.0));
  CHECK(sphere_measure(Dimension(2)) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(sphere_measure(Dimension(3)) == doctest::Approx(4.0 * std::numbers::pi));
  CHECK(sphere_measure(Dimension(5)) == doctest::Approx(8.0 * std::numbers::pi * std::numbers::pi / 3.0));
  for (int d : {1, 2, 3, 5}) CHECK(sphere_measure(Dimension(d)) == doctest::Approx(to_double(sphere_monomial(d))));
}

TEST_CASE("sharp constants reduce exactly") {
  const Monomial two_pi = Monomial{Rational(2), Rational(0), 1}.normalized();
  // KG(1) / 2 = (2 pi)^{-2}
  CHECK(kg_monomial(1) / Monomial{Rational(2), Rational(0), 0}.normalized() == two_pi.pow(Rational(-2)));
  // KG(2) 2^{-1/2} = (2^{5/4} pi)^{-4}
  const Monomial lhs2 = kg_monomial(2) * Monomial{Rational(1), Rational(-1, 2), 0};
  const Monomial base{Rational(1), Rational(5, 4), 1};
  CHECK(lhs2 == base.pow(Rational(-4)));
  CHECK(lhs2 == Monomial{Rational(1), Rational(-5), -4});
  // KG(3) = (2 pi)^{-7}
  CHECK(kg_monomial(3) == two_pi.pow(Rational(-7)));
  // (2 pi)^{10} KG(5) = 1 / (24 pi^2)
  CHECK(kg_monomial(5) * two_pi.pow(Rational(10)) == Monomial{Rational(1, 3), Rational(-3), -2}.normalized());

  for (int d : {1, 2, 3, 5}) CHECK(kg_constant(Dimension(d)) == doctest::Approx(to_double(kg_monomial(d))).epsilon(1e-13));
  CHECK(kg_constant(Dimension(5)) * std::pow(2.0 * std::numbers::pi, 10) ==
        doctest::Approx(1.0 / (24.0 * std::numbers::pi * std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("line kernel") {
  const Mass one(1.0);
  CHECK(line_kernel(one, 1.0, -1.0) == doctest::Approx(1.0 / (2.0 * std::numbers::sqrt2)).epsilon(1e-15));
  const auto b = kernel_bound(Dimension(1), one, {1.0, 1.0, -1.0});
  CHECK(b.value == doctest::Approx(1.0 / (2.0 * std::numbers::sqrt2)));
  CHECK(b.bound == doctest::Approx(std::numbers::sqrt2 / 2.0));
  CHECK_THROWS_AS(line_kernel(one, 2.0, 2.0), SingularPointError);
  CHECK_THROWS_AS(kernel_bound(Dimension(1), one, {2.0, 2.0, 1.0}), SingularPointError);
  CHECK_THROWS_AS(kernel_bound(Dimension(1), Mass(0.0), {1.0, 2.0, 1.0}), DomainError);

  CounterRng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double s = rng.uniform(0.1, 3.0);
    const double y1 = rng.uniform(-20.0, 20.0);
    const double y2 = rng.uniform(-20.0, 20.0);
    const Mass m(s);
    const double k = line_kernel(m, y1, y2);
    // symmetric
    CHECK(line_kernel(m, y2, y1) == doctest::Approx(k).epsilon(1e-12));
    // K^2 = 1 / [s^2 (y1^2 + y2^2) + 2 y1^2 y2^2 - 2 y1 y2 phi phi'], cancellation-free for y1 y2 < 0
    if (y1 * y2 < 0.0) {
      const double sq = s * s * (y1 * y1 + y2 * y2) + 2.0 * y1 * y1 * y2 * y2 -
                      2.0 * y1 * y2 * phi(m, std::abs(y1)) * phi(m, std::abs(y2));
      CHECK(k * k * sq == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto kb = kernel_bound(Dimension(1), m, {std::abs(y1), std::abs(y2), y1 * y2 < 0.0 ? -1.0 : 1.0});
    CHECK(kb.value <= kb.bound * (1.0 + 1e-12));
  }
}

TEST_CASE("kernel in d >= 2") {
  const Mass one(1.0);
  CHECK(kernel_K(Dimension(2), one, {1.5, 1.5, 1.0}) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-14));
  CHECK(kernel_K(Dimension(3), one, {0.0, 0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(kernel_K(Dimension(3), Mass(0.0), {1.0, 2.0, 0.3}) == 1.0);
  CHECK_THROWS_AS(kernel_K(Dimension(2), Mass(0.0), {1.0, 2.0, 1.0}), SingularPointError);
  CHECK_THROWS_AS(kernel_K(Dimension(1), one, {1.0, 2.0, 1.0}), DomainError);

  CounterRng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const KernelPoint p{rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0), rng.uniform(-1.0, 1.0)};
    for (int d : {2, 3, 5}) {
      const double k = kernel_K(Dimension(d), one, p);
      CHECK(k == doctest::Approx(kernel_K(Dimension(d), one, {p.r2, p.r1, p.c})).epsilon(1e-12));
      const double base = phi(one, p.r1) * phi(one, p.r2) - p.r1 * p.r2 * p.c - 1.0;
      CHECK(kernel_base(one, p) == doctest::Approx(base).epsilon(1e-9).scale(10.0));
      // K_s^2 (base + 2 s^2) = base^{d-2}
      const double exact = kernel_base(one, p);
      CHECK(k * k * (exact + 2.0) == doctest::Approx(std::pow(exact, d - 2)).epsilon(1e-10));
      if (d <= 3) {
        const auto b = kernel_bound(Dimension(d), one, p);
        CHECK(b.value <= b.bound * (1.0 + 1e-12));
      }
    }
  }
  CHECK_THROWS_AS(kernel_bound(Dimension(5), one, {1.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(kernel_bound(Dimension(2), Mass(2.0), {1.0, 1.0, 0.0}), DomainError);
}
