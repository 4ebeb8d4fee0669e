#include "kgsharp/extremizers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kgsharp/hyperboloid.hpp"

namespace kgsharp {

using quad::AxisBounds;
using quad::EndpointBehavior;
using quad::QuadratureConfig;
using quad::QuadratureResult;
using quad::Sample;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double s4() { return sphere_measure(Dimension(5)); }

void require_five(Dimension d, const char* who) {
  if (d.value() != 5) throw DomainError(std::string(who) + ": defined for d = 5");
}

// (x^2 - e^2)^p for x >= e >= 0.
double gap_power(double x, double e, double p) {
  const double g = (x - e) * (x + e);
  return g <= 0.0 ? 0.0 : std::pow(g, p);
}

AxisBounds half_line(double lo, double scale) {
  AxisBounds axis;
  axis.bounds = [lo](std::span<const double>) { return std::pair{lo, quad::kInfinity}; };
  axis.scale = scale;
  axis.ends.initial_panels = 4;
  return axis;
}

}  // namespace

void ExtremizerParam::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("ExtremizerParam: a must be > 0");
}

RadialProfile extremizer_profile(const ExtremizerParam& p) {
  p.validate();
  const double a = p.a;
  const Mass s = p.s;
  RadialProfile f;
  f.eval = [a, s](double r) {
    const double ph = phi(s, r);
    if (ph == 0.0) return quad::kInfinity;
    return std::exp(-a * ph) / ph;
  };
  f.decay_scale = 1.0 / a;
  f.label = "f_a(a=" + std::to_string(a) + ")";
  return f;
}

RadialProfile normalized_g(const ExtremizerParam& p, const QuadratureConfig& cfg) {
  const RadialProfile f = extremizer_profile(p);
  const double value4 = norm_s(f, p.d, p.s, cfg).value4;
  if (!(value4 > 0.0)) throw DomainError("normalized_g: degenerate (s)-norm");
  RadialProfile g = f.scaled(1.0 / std::pow(value4, 0.25));
  g.label = "g_a(a=" + std::to_string(p.a) + ")";
  return g;
}

QuadratureResult beta_norm_scaled(const ExtremizerParam& p, double beta, const QuadratureConfig& cfg) {
  p.validate();
  require_five(p.d, "beta_norm_scaled");
  const double e = p.a * p.s.value();
  auto f = [&](double x) { return std::exp(-2.0 * x) * gap_power(x, e, 1.5) * std::pow(x, 2.0 * beta - 1.0); };
  quad::SemiInfiniteOptions opts;
  opts.scale = 0.5;
  if (e > 0.0) opts.left_exponent = 1.5;
  opts.initial_panels = 4;
  return quad::integrate_semi_infinite(f, e, cfg, opts).scaled(s4() * std::pow(p.a, 2.0 - 2.0 * beta));
}

QuadratureResult l4_fourth_power_scaled(const ExtremizerParam& p, const QuadratureConfig& cfg) {
  p.validate();
  require_five(p.d, "l4_fourth_power_scaled");
  const double e = 2.0 * p.a * p.s.value();
  const double c = std::pow(s4(), 3) / (64.0 * std::pow(kTwoPi, 14));
  auto f = [&](std::span<const double> v) {
    const double x = v[0];
    const double y = v[1];
    const double m = (x - y) * (x + y);
    if (!(m > 0.0)) return 0.0;
    const double g = m - e * e;
    if (g <= 0.0) return 0.0;
    return std::exp(-2.0 * x) * g * g * g / m * std::pow(y, 4);
  };
  AxisBounds inner;
  inner.bounds = [e](std::span<const double> outer) {
    const double x = outer[0];
    return std::pair{0.0, std::sqrt(std::max(0.0, (x - e) * (x + e)))};
  };
  inner.ends.initial_panels = 2;
  const std::array<AxisBounds, 2> axes = {half_line(e, 0.5), inner};
  return quad::integrate_iterated(f, axes, cfg).scaled(c);
}

QuadratureResult l4_fourth_power_closed(const ExtremizerParam& p, const QuadratureConfig& cfg) {
  return l4_fourth_power_scaled(p, cfg).scaled(std::pow(p.a, -10));
}

QuotientResult quotient_closed(const ExtremizerParam& p, const QuadratureConfig& cfg) {
  const auto l4 = l4_fourth_power_scaled(p, cfg);
  const double b1 = beta_norm_scaled(p, 1.0, cfg).value;
  const double bh = p.s.value() > 0.0 ? beta_norm_scaled(p, 0.5, cfg).value : 0.0;
  const double sv = p.s.value();
  QuotientResult out;
  // a^10 (2pi)^10 ||f_a||_(s)^4 = b1^2 - s^2 bh^2
  out.denominator = (b1 * b1 - sv * sv * bh * bh) / std::pow(kTwoPi, 10);
  out.numerator = l4.value;
  if (!(out.denominator > 0.0)) throw DomainError("quotient_closed: degenerate (s)-norm");
  out.value = out.numerator / out.denominator;
  out.error_estimate = l4.error_estimate / out.denominator;
  return out;
}

QuadratureResult ijk_integral(MomentKind kind, int j, int k, double a, Mass s, const QuadratureConfig& cfg) {
  if (!(a > 0.0)) throw DomainError("ijk_integral: a must be > 0");
  if (j < 0) throw DomainError("ijk_integral: j must be >= 0");
  const double e = 2.0 * a * s.value();
  if (kind == MomentKind::I) {
    if (2 * k + 4 < 0) throw DomainError("ijk_integral: I_{j,k} requires k >= -2");
    auto f = [&](std::span<const double> v) {
      return std::exp(-2.0 * v[0]) * std::pow(v[0], 2 * j) * std::pow(v[1], 2 * k + 4);
    };
    AxisBounds inner;
    inner.bounds = [e](std::span<const double> outer) {
      return std::pair{0.0, std::sqrt(std::max(0.0, (outer[0] - e) * (outer[0] + e)))};
    };
    const std::array<AxisBounds, 2> axes = {half_line(e, 0.5), inner};
    return quad::integrate_iterated(f, axes, cfg).scaled(std::pow(a, 4 - 2 * (j + k)));
  }
  if (!(e > 0.0)) throw DomainError("ijk_integral: II_{j,k} diverges at s = 0");
  if (!(2 * k + 3 > 0)) throw DomainError("ijk_integral: II_{j,k} requires k > -3/2");
  // Inner variable t = 2 log x - log(x^2 - y^2), so that x^2 - y^2 = x^2 e^{-t}
  // and y^2 = -x^2 expm1(-t); the inner integral is (1/2) int y^{2k+3} dt.
  const double p = 0.5 * (2 * k + 3);
  auto f = [&](std::span<const double> v) {
    const double x = v[0];
    const double y2 = -x * x * std::expm1(-v[1]);
    return 0.5 * std::exp(-2.0 * x) * std::pow(x, 2 * j) * std::pow(y2, p);
  };
  AxisBounds inner;
  inner.bounds = [e](std::span<const double> outer) { return std::pair{0.0, 2.0 * std::log(outer[0] / e)}; };
  inner.ends.left_exponent = p;
  inner.ends.initial_panels = 2;
  const std::array<AxisBounds, 2> axes = {half_line(e, 0.5), inner};
  return quad::integrate_iterated(f, axes, cfg).scaled(std::pow(a, 6 - 2 * (j + k)));
}

double ijk_limit(int j, int k) {
  if (j + k < 2) return 0.0;
  if (j + k == 2) return 362880.0 / ((2.0 * k + 5.0) * 1024.0);
  throw DomainError("ijk_limit: limit is stated for j + k <= 2");
}

QuadratureResult claim1_remainder(int j, int k, double a, Mass s, const QuadratureConfig& cfg) {
  if (!(a > 0.0)) throw DomainError("claim1_remainder: a must be > 0");
  if (!(2 * k + 3 > 0)) throw DomainError("claim1_remainder: requires k > -3/2");
  const double e = 2.0 * a * s.value();
  const double p = 0.5 * (2 * k + 3);
  auto f = [&](double x) { return std::exp(-2.0 * x) * std::pow(x, 2 * j) * gap_power(x, e, p); };
  quad::SemiInfiniteOptions opts;
  opts.scale = 0.5;
  if (e > 0.0) opts.left_exponent = p;
  opts.initial_panels = 4;
  return quad::integrate_semi_infinite(f, e, cfg, opts).scaled(std::pow(a, 6 - 2 * (j + k)) / (2 * k + 3));
}

double expansion_coefficient(int j, int k, Mass s) {
  const double s2 = s.value() * s.value();
  if (j == 0 && k == 0) return 16.0 * s2 * s2;
  if (j == 1 && k == 0) return -8.0 * s2;
  if (j == 0 && k == 1) return 8.0 * s2;
  if (j == 1 && k == 1) return -2.0;
  if ((j == 0 && k == 2) || (j == 2 && k == 0)) return 1.0;
  return 0.0;
}

QuadratureResult expansion_assembly_scaled(double a, Mass s, const QuadratureConfig& cfg) {
  constexpr std::array<std::array<int, 2>, 6> kSet = {{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {2, 0}}};
  const double s2 = s.value() * s.value();
  QuadratureResult total;
  for (const auto& [j, k] : kSet) {
    const double c = expansion_coefficient(j, k, s);
    if (c == 0.0) continue;
    total += ijk_integral(MomentKind::I, j, k, a, s, cfg).scaled(c);
    if (s2 > 0.0) total += ijk_integral(MomentKind::II, j, k, a, s, cfg).scaled(-4.0 * s2 * c);
  }
  return total.scaled(std::pow(s4(), 3) / (64.0 * std::pow(kTwoPi, 14)));
}

const Series& AsymptoticsReport::at(const std::string& name) const {
  for (const Series& q : quantities) {
    if (q.name == name) return q;
  }
  throw std::out_of_range("AsymptoticsReport: no series named " + name);
}

namespace {

void check_grid(const std::vector<double>& a_grid) {
  if (a_grid.empty()) throw DomainError("a_grid must not be empty");
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    if (!(a_grid[i] > 0.0)) throw DomainError("a_grid entries must be > 0");
    if (i > 0 && !(a_grid[i] < a_grid[i - 1])) throw DomainError("a_grid must be strictly decreasing");
  }
}

void push(Series& s, const QuadratureResult& r) {
  s.values.push_back(r.value);
  s.converged = s.converged && r.converged;
}

}  // namespace

AsymptoticsReport asymptotics_report(const std::vector<double>& a_grid, Mass s, const QuadratureConfig& cfg) {
  check_grid(a_grid);
  AsymptoticsReport rep;
  rep.a_grid = a_grid;
  const double pi = std::numbers::pi;
  Series b1{"beta=1", {}, 0.75 * s4(), true};
  Series bh{"beta=1/2", {}, 0.0, true};
  Series quotient{"quotient", {}, 1.0 / (24.0 * pi * pi), true};
  std::vector<Series> moments;
  constexpr std::array<std::array<int, 2>, 6> kSet = {{{2, 0}, {0, 2}, {1, 1}, {0, 0}, {1, 0}, {0, 1}}};
  for (const auto& [j, k] : kSet) {
    moments.push_back(Series{"I_" + std::to_string(j) + "," + std::to_string(k), {}, ijk_limit(j, k), true});
  }
  for (double a : a_grid) {
    const ExtremizerParam p{a, s, Dimension(5)};
    push(b1, beta_norm_scaled(p, 1.0, cfg));
    push(bh, beta_norm_scaled(p, 0.5, cfg));
    const auto q = quotient_closed(p, cfg);
    quotient.values.push_back(q.value);
    for (std::size_t i = 0; i < kSet.size(); ++i) {
      push(moments[i], ijk_integral(MomentKind::I, kSet[i][0], kSet[i][1], a, s, cfg));
    }
  }
  rep.quantities = {b1, bh, quotient};
  rep.quantities.insert(rep.quantities.end(), moments.begin(), moments.end());
  return rep;
}

AsymptoticsReport claim1_check(int j, int k, const std::vector<double>& a_grid, Mass s, const QuadratureConfig& cfg) {
  check_grid(a_grid);
  if (j < 0 || !(2 * k + 3 > 0) || j + k >= 3) {
    throw DomainError("claim1_check: requires j >= 0, k > -3/2 and j + k < 3");
  }
  AsymptoticsReport rep;
  rep.a_grid = a_grid;
  Series left{"II_" + std::to_string(j) + "," + std::to_string(k), {}, std::numeric_limits<double>::quiet_NaN(), true};
  Series right{"II_" + std::to_string(j + 1) + "," + std::to_string(k - 1), {}, std::numeric_limits<double>::quiet_NaN(), true};
  Series gap{"gap", {}, 0.0, true};
  Series rem{"remainder", {}, 0.0, true};
  const bool right_defined = 2 * (k - 1) + 3 > 0;
  for (double a : a_grid) {
    const auto l = ijk_integral(MomentKind::II, j, k, a, s, cfg);
    push(left, l);
    push(rem, claim1_remainder(j, k, a, s, cfg));
    if (right_defined) {
      const auto r = ijk_integral(MomentKind::II, j + 1, k - 1, a, s, cfg);
      push(right, r);
      gap.values.push_back(l.value - r.value);
    }
  }
  rep.quantities = {left};
  if (right_defined) {
    rep.quantities.push_back(right);
    rep.quantities.push_back(gap);
  } else {
    rep.quantities.front().limit = 0.0;
  }
  rep.quantities.push_back(rem);
  return rep;
}

namespace {

// m (1 - (1 - 4 s^2 / m)^{3/2}) with m - 4 s^2 supplied separately to avoid cancellation.
double jn_weight(double m, double m_minus_4s2) {
  if (!(m > 0.0)) return 0.0;
  const double ratio = std::clamp(m_minus_4s2 / m, 0.0, 1.0);
  return m * (1.0 - ratio * std::sqrt(ratio));
}

}  // namespace

QuadratureResult jn_on_support(const RadialProfile& g, Mass s, const QuadratureConfig& cfg) {
  cfg.validate();
  const double sv = s.value();
  if (sv == 0.0) return {};
  const Dimension d(5);
  RadialProfile w = g;
  w.eval = [g, s](double r) {
    const double v = g(r);
    return v == 0.0 ? 0.0 : phi(s, r) * v * v;
  };
  const DeltaPairing P{d, s, SheetSigns::plus_plus(), w, w, {}};
  const QuadratureConfig inner_cfg = cfg.inner();
  const QuadratureConfig pair_cfg = inner_cfg.inner();

  auto outer = [&](double tau) -> Sample {
    if (tau <= 2.0 * sv) return {};
    const double rho_max = std::sqrt((tau - 2.0 * sv) * (tau + 2.0 * sv));
    auto inner = [&](double rho) -> Sample {
      const auto b = delta_pairing_eval(P, {rho, tau}, pair_cfg);
      const double m = (tau - rho) * (tau + rho);
      const double h = jn_weight(m, (rho_max - rho) * (rho_max + rho)) * std::pow(rho, 4);
      return {b.value * h, b.error_estimate * h};
    };
    EndpointBehavior ends;
    ends.initial_panels = 4;
    const auto r = quad::integrate_1d_nested(inner, 0.0, rho_max, inner_cfg, ends);
    return {r.value, r.error_estimate};
  };
  QuadratureResult r;
  if (g.compact()) {
    const double hi = 2.0 * phi(s, g.support_max);
    if (!(hi > 2.0 * sv)) return {};
    EndpointBehavior ends;
    ends.initial_panels = 8;
    r = quad::integrate_1d_nested(outer, 2.0 * sv, hi, cfg, ends);
  } else {
    quad::SemiInfiniteOptions opts;
    opts.scale = 0.5 * g.decay_scale;
    opts.initial_panels = 4;
    r = quad::integrate_semi_infinite_nested(outer, 2.0 * sv, cfg, opts);
  }
  return r.scaled(sphere_measure(d));
}

QuadratureResult jn_direct(const RadialProfile& g, Mass s, const QuadratureConfig& cfg) {
  const double sv = s.value();
  if (sv == 0.0) return {};
  const Dimension d(5);
  auto f = [&](std::span<const double> x) {
    const double r1 = x[0];
    const double r2 = x[1];
    const double c = x[2];
    const double w = g(r1) * g(r1) * g(r2) * g(r2);
    if (w == 0.0) return 0.0;
    const double p1 = phi(s, r1);
    const double p2 = phi(s, r2);
    // on the support: tau^2 - |xi|^2 - 4 s^2 = 2 (phi phi' - r1 r2 c - s^2)
    const double base = kernel_base(s, {r1, r2, c});
    const double gap = 2.0 * base;
    const double m = gap + 4.0 * sv * sv;
    return w * p1 * p2 * jn_weight(m, gap) * (1.0 - c) * (1.0 + c) * std::pow(r1 * r2, 4);
  };
  AxisBounds radial;
  const double hi = g.compact() ? g.support_max : quad::kInfinity;
  radial.bounds = [hi](std::span<const double>) { return std::pair{0.0, hi}; };
  radial.scale = g.decay_scale;
  radial.ends.initial_panels = 4;
  AxisBounds cosine;
  cosine.bounds = [](std::span<const double>) { return std::pair{-1.0, 1.0}; };
  cosine.ends.initial_panels = 2;
  const std::array<AxisBounds, 3> axes = {radial, radial, cosine};
  return quad::integrate_iterated(f, axes, cfg).scaled(sphere_measure(d) * sphere_measure(Dimension(4)));
}

ConcentrationDiagnostics concentration_diagnostics(const RadialProfile& g, Dimension d, Mass s, double R,
                                                   const QuadratureConfig& cfg) {
  require_five(d, "concentration_diagnostics");
  if (!(R > 0.0)) throw DomainError("concentration_diagnostics: R must be > 0");
  const auto n = norm_s(g, d, s, cfg);
  if (n.value4 > 1.0 + 1e-8) throw DomainError("concentration_diagnostics: requires ||g||_(s) <= 1");
  ConcentrationDiagnostics out;
  out.half_norm = l2_physical(d, s, g, 0.5, cfg);
  EndpointBehavior ends;
  ends.initial_panels = 8;
  const double ball_hi = g.compact() ? std::min(R, g.support_max) : R;
  const auto ball = !(ball_hi > 0.0) ? quad::QuadratureResult{} : quad::integrate_1d(
      [&](double r) {
        const double v = g(r);
        const double ph = phi(s, r);
        return v == 0.0 ? 0.0 : ph * ph * v * v * std::pow(r, 4);
      },
      0.0, ball_hi, cfg, ends);
  out.ball_mass = std::sqrt(sphere_measure(d) * ball.value);
  out.carneiro = carneiro_term(d, s, g, cfg);
  out.phi_moment = sphere_measure(d) * radial_integral(
                                           d, g,
                                           [&](double r) {
                                             const double v = g(r);
                                             return v == 0.0 ? 0.0 : v * v * phi(s, r);
                                           },
                                           cfg)
                                           .value;
  out.jn = jn_on_support(g, s, cfg).value;
  return out;
}

}  // namespace kgsharp
