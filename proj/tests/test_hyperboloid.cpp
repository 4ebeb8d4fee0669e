#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <numbers>
#include <vector>

#include "kgsharp/hyperboloid.hpp"

using namespace kgsharp;

namespace {

RadialProfile inverse_phi(Mass s) {
  return RadialProfile{[s](double r) { return 1.0 / phi(s, r); }, 1.0, "1/phi"};
}

RadialProfile gauss(double width) {
  return RadialProfile{[width](double r) { return std::exp(-r * r / (width * width)); }, width, "gauss"};
}

quad::QuadratureConfig tol(double rel) {
  quad::QuadratureConfig c;
  c.rel_tol = rel;
  return c;
}

}  // namespace

TEST_CASE("closed form of the sheet convolution") {
  CHECK(conv_closed_form(Dimension(2), Mass(0.0), {0.0, 2.0}) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(conv_closed_form(Dimension(5), Mass(1.0), {0.0, 3.0}) == doctest::Approx(12.260614639926056).epsilon(1e-14));
  CHECK(conv_closed_form(Dimension(5), Mass(1.0), {1.0, std::sqrt(10.0)}) ==
        doctest::Approx(12.260614639926056).epsilon(1e-13));
  CHECK(conv_closed_form(Dimension(3), Mass(1.0), {1.0, 1.5}) == 0.0);
  CHECK_THROWS_AS(conv_closed_form(Dimension(1), Mass(1.0), {0.0, 3.0}), DomainError);
}

TEST_CASE("support of the sheet convolutions") {
  const Mass one(1.0);
  CHECK(support_check(Dimension(3), one, {1.0, 3.0}, SheetSigns::plus_plus()));
  CHECK_FALSE(support_check(Dimension(3), one, {1.0, 2.0}, SheetSigns::plus_plus()));
  CHECK(support_check(Dimension(3), one, {1.0, -3.0}, SheetSigns::minus_minus()));
  CHECK(support_check(Dimension(3), one, {1.0, 0.5}, SheetSigns::plus_minus()));
  CHECK_FALSE(support_check(Dimension(3), one, {1.0, 3.0}, SheetSigns::plus_minus()));
  CHECK_THROWS(support_check(Dimension(3), one, {1.0, 3.0}, SheetSigns{2, 1}));

  const auto same = admissible_radii(one, {1.0, 3.0}, SheetSigns::plus_plus());
  REQUIRE(same.has_value());
  CHECK(same->bounded());
  for (double r : {same->lo, same->hi}) {
    const double collinear = std::min(std::abs(phi(one, r) + phi(one, std::abs(1.0 - r)) - 3.0),
                                      std::abs(phi(one, r) + phi(one, 1.0 + r) - 3.0));
    CHECK(collinear < 1e-12);
  }
  const auto mixed = admissible_radii(one, {3.0, 0.5}, SheetSigns::plus_minus());
  REQUIRE(mixed.has_value());
  CHECK_FALSE(mixed->bounded());
  CHECK_FALSE(admissible_radii(one, {1.0, 2.0}, SheetSigns::plus_plus()).has_value());
}

TEST_CASE("pairing reproduces the closed form") {
  const auto cfg = tol(1e-11);
  for (int d : {2, 3, 5}) {
    for (double s : {0.0, 1.0, 2.0}) {
      if (d == 2 && s == 0.0) continue;
      const Mass m(s);
      const DeltaPairing P{Dimension(d), m, SheetSigns::plus_plus(), inverse_phi(m), inverse_phi(m), {}};
      for (const SpectralPoint p : {SpectralPoint{0.0, 2.0 * s + 1.0}, SpectralPoint{0.7, 2.0 * s + 2.5},
                                    SpectralPoint{5.0, std::hypot(2.0 * s, 5.0) + 0.1}}) {
        const auto r = delta_pairing_eval(P, p, cfg);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(conv_closed_form(P.d, m, p)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("pairing is continuous across the small-rho branch and near the support edge") {
  const Mass one(1.0);
  const auto cfg = tol(1e-11);
  const DeltaPairing P{Dimension(3), one, SheetSigns::plus_plus(), gauss(2.0), gauss(1.5), {}};
  const double at0 = delta_pairing_eval(P, {0.0, 3.0}, cfg).value;
  for (double rho : {0.5e-8, 2e-8, 1e-7, 1e-6}) {
    CHECK(delta_pairing_eval(P, {rho, std::hypot(3.0, rho)}, cfg).value == doctest::Approx(at0).epsilon(1e-7));
  }
  const DeltaPairing Q{Dimension(5), one, SheetSigns::plus_plus(), inverse_phi(one), inverse_phi(one), {}};
  for (double eps : {1e-4, 1e-7, 1e-10}) {
    const SpectralPoint p{2.0, std::hypot(2.0, 2.0) * (1.0 + eps)};
    CHECK(delta_pairing_eval(Q, p, cfg).value == doctest::Approx(conv_closed_form(Q.d, one, p)).epsilon(1e-8));
  }
}

TEST_CASE("mixed and lower sheets agree with the mollified oracle") {
  const Mass one(1.0);
  const auto cfg = tol(1e-10);
  auto moll_cfg = tol(1e-9);
  for (const auto& [signs, p] : std::vector<std::pair<SheetSigns, SpectralPoint>>{
           {SheetSigns::plus_minus(), {2.0, 0.5}}, {SheetSigns::minus_minus(), {1.0, -3.0}}}) {
    const DeltaPairing P{Dimension(3), one, signs, gauss(1.5), gauss(1.0), {}};
    const auto exact = delta_pairing_eval(P, p, cfg);
    const auto moll = mollified_delta_oracle(P, p, kDefaultMollifierWidths, moll_cfg);
    CHECK(exact.converged);
    CHECK(moll.value == doctest::Approx(exact.value).epsilon(1e-4));
  }
}

TEST_CASE("compactly supported weights") {
  const Mass one(1.0);
  const auto cfg = tol(1e-10);
  RadialProfile box{[](double) { return 1.0; }, 1.0, "box", 2.0};
  const DeltaPairing P{Dimension(3), one, SheetSigns::plus_plus(), box, box, {}};
  const SpectralPoint p{1.0, 3.5};
  const auto r = delta_pairing_eval(P, p, cfg);
  CHECK(r.converged);
  const auto moll = mollified_delta_oracle(P, p, kDefaultMollifierWidths, tol(1e-9));
  CHECK(moll.value == doctest::Approx(r.value).epsilon(5e-3));
  // outside the reach of the supports
  CHECK(delta_pairing_eval(P, {0.0, 2.0 * phi(one, 2.0) + 0.1}, cfg).value == 0.0);
}

TEST_CASE("nodes visited lie on the constraint surface") {
  const Mass one(1.0);
  const DeltaPairing P{Dimension(5), one, SheetSigns::plus_plus(), gauss(1.0), gauss(1.0), {}};
  const SpectralPoint p{1.3, 4.0};
  int visited = 0;
  delta_pairing_eval(P, p, tol(1e-8), [&](const SupportNode& n) {
    ++visited;
    CHECK(phi(one, n.r) + phi(one, n.q) == doctest::Approx(p.tau).epsilon(1e-9));
    // y1 + y2 = xi
    CHECK(n.r * n.r + n.q * n.q + 2.0 * n.r * n.q * n.c == doctest::Approx(p.rho * p.rho).epsilon(1e-7).scale(1.0));
  });
  CHECK(visited > 0);
}

TEST_CASE("Lorentz boosts preserve the interval") {
  const SpacetimePoint p{{1.0, -2.0, 0.5}, 4.0};
  for (double t : {-0.9, -0.3, 0.0, 0.6}) {
    CHECK(lorentz_boost(p, t).interval() == doctest::Approx(p.interval()).epsilon(1e-13));
  }
  const auto r = lorentz_reduce(p);
  CHECK(r.xi[0] == 0.0);
  CHECK(r.tau * r.tau == doctest::Approx(p.interval()));
  CHECK_THROWS_AS(lorentz_boost(p, 1.0), DomainError);
  CHECK_THROWS_AS(lorentz_reduce({{3.0}, 2.0}), DomainError);
}

TEST_CASE("Cauchy-Schwarz weight is constant on the support") {
  const auto cfg = tol(1e-10);
  for (int d : {2, 3, 5}) {
    for (const SpectralPoint p : {SpectralPoint{0.0, 3.0}, SpectralPoint{1.5, 4.0}, SpectralPoint{4.0, 9.0}}) {
      const auto r = cs_weight_integral(Dimension(d), Mass(1.0), p, cfg);
      CHECK(r.value == doctest::Approx(cs_weight_constant(Dimension(d))).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(cs_weight_integral(Dimension(3), Mass(1.0), {0.0, 2.0}, cfg), DomainError);
}
