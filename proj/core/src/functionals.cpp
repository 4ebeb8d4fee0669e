#include "kgsharp/functionals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace kgsharp {

using quad::AxisBounds;
using quad::EndpointBehavior;
using quad::QuadratureConfig;
using quad::QuadratureResult;
using quad::Sample;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool empty_support(const RadialProfile& f) { return !(f.support_max > 0.0); }

// Axis over [0, support_max] for compact profiles, [0, inf) otherwise.
AxisBounds radial_axis(const RadialProfile& f) {
  AxisBounds axis;
  const double hi = f.compact() ? f.support_max : quad::kInfinity;
  axis.bounds = [hi](std::span<const double>) { return std::pair{0.0, hi}; };
  axis.ends.initial_panels = 4;
  axis.scale = f.decay_scale;
  return axis;
}

AxisBounds cosine_axis(int d) {
  AxisBounds axis;
  axis.bounds = [](std::span<const double>) { return std::pair{-1.0, 1.0}; };
  if (d != 3) {
    axis.ends.left_exponent = 0.5 * (d - 3);
    axis.ends.right_exponent = 0.5 * (d - 3);
  }
  axis.ends.initial_panels = 2;
  return axis;
}

double angular_weight(int d, double c) {
  if (d == 3) return 1.0;
  return std::pow((1.0 - c) * (1.0 + c), 0.5 * (d - 3));
}

double sqr(double x) { return x * x; }

// Integrates t -> [int_0^{rho_max(t)} B(rho, t)^2 rho^{d-1} d rho] over t >= lo.
QuadratureResult integrate_pairing_square(const DeltaPairing& P, bool mixed, double outer_hi, double outer_scale,
                                          const QuadratureConfig& cfg) {
  const int d = P.d.value();
  const double sv = P.s.value();
  const QuadratureConfig inner_cfg = cfg.inner();
  const QuadratureConfig pair_cfg = inner_cfg.inner();
  const double lower_sign = P.signs.eps1 == -1 && P.signs.eps2 == -1 ? -1.0 : 1.0;

  auto inner = [&](double outer) -> Sample {
    // Same sheets: outer is |tau|, inner is rho. Mixed sheets: outer is rho, inner is tau.
    auto g = [&](double x) -> Sample {
      const SpectralPoint p = mixed ? SpectralPoint{outer, x} : SpectralPoint{x, lower_sign * outer};
      const auto b = delta_pairing_eval(P, p, pair_cfg);
      const double rho = p.rho;
      const double jac = std::pow(rho, d - 1);
      return {b.value * b.value * jac, 2.0 * std::abs(b.value) * b.error_estimate * jac};
    };
    double lo = 0.0;
    double hi = 0.0;
    if (mixed) {
      lo = -outer;
      hi = outer;
    } else {
      if (outer <= 2.0 * sv) return {};
      hi = std::sqrt((outer - 2.0 * sv) * (outer + 2.0 * sv));
    }
    if (!(hi > lo)) return {};
    EndpointBehavior ends;
    ends.initial_panels = 4;
    const auto r = quad::integrate_1d_nested(g, lo, hi, inner_cfg, ends);
    return {r.value, r.error_estimate};
  };

  const double start = mixed ? 0.0 : 2.0 * sv;
  if (std::isfinite(outer_hi)) {
    if (!(outer_hi > start)) return {};
    EndpointBehavior ends;
    ends.initial_panels = 8;
    return quad::integrate_1d_nested(inner, start, outer_hi, cfg, ends);
  }
  quad::SemiInfiniteOptions opts;
  opts.scale = outer_scale;
  opts.initial_panels = 4;
  return quad::integrate_semi_infinite_nested(inner, start, cfg, opts);
}

void require_d_at_least_two(Dimension d, const char* who) {
  if (d.value() < 2) throw DomainError(std::string(who) + ": requires d >= 2");
}

}  // namespace

QuadratureResult radial_integral(Dimension d, const RadialProfile& f, const quad::Integrand& g,
                                 const QuadratureConfig& cfg) {
  if (empty_support(f)) return {};
  const int dim = d.value();
  auto h = [&](double r) {
    const double v = g(r);
    return v == 0.0 ? 0.0 : v * std::pow(r, dim - 1);
  };
  if (f.compact()) {
    EndpointBehavior ends;
    ends.initial_panels = 8;
    return quad::integrate_1d(h, 0.0, f.support_max, cfg, ends);
  }
  quad::SemiInfiniteOptions opts;
  opts.scale = f.decay_scale;
  opts.initial_panels = 4;
  return quad::integrate_semi_infinite(h, 0.0, cfg, opts);
}

double l2_physical(Dimension d, Mass s, const RadialProfile& f, double beta, const QuadratureConfig& cfg) {
  const auto r = radial_integral(
      d, f,
      [&](double x) {
        const double v = f(x);
        if (v == 0.0) return 0.0;
        return std::pow(phi(s, x), 2.0 * beta) * v * v;
      },
      cfg);
  return std::sqrt(std::pow(kTwoPi, -d.value()) * sphere_measure(d) * r.value);
}

double hm_norm(const RadialProfile& f, Dimension d, double m, const QuadratureConfig& cfg) {
  if (!(m >= 0.0)) throw DomainError("hm_norm: m must be >= 0");
  const auto r = radial_integral(
      d, f,
      [&](double x) {
        const double v = f(x);
        if (v == 0.0) return 0.0;
        return std::pow(1.0 + x * x, m) * v * v;
      },
      cfg);
  return std::sqrt(sphere_measure(d) * r.value);
}

NormSResult norm_s(const RadialProfile& f, Dimension d, Mass s, const QuadratureConfig& cfg) {
  NormSResult out;
  const double full = l2_physical(d, s, f, 1.0, cfg);
  out.phi_norm4 = sqr(sqr(full));
  if (s.value() > 0.0) {
    const double half = l2_physical(d, s, f, 0.5, cfg);
    out.half_norm4 = sqr(s.value()) * sqr(sqr(half));
  }
  out.value4 = out.phi_norm4 - out.half_norm4;
  if (out.value4 < -1e-8 * out.phi_norm4) throw DomainError("norm_s: negative fourth power, inconsistent norms");
  return out;
}

QuadratureResult bilinear_rhs(Dimension d, Mass s, const RadialProfile& f1, const RadialProfile& f2,
                              const QuadratureConfig& cfg) {
  require_d_at_least_two(d, "bilinear_rhs");
  const int dim = d.value();
  if (dim == 2 && s.value() == 0.0) throw DomainError("bilinear_rhs: d = 2 requires s > 0");
  if (empty_support(f1) || empty_support(f2)) return {};
  const double pref = kg_constant(d) * sphere_measure(d) * sphere_measure(Dimension(dim - 1));
  auto f = [&](std::span<const double> x) {
    const double r1 = x[0];
    const double r2 = x[1];
    const double c = x[2];
    const double w = sqr(f1(r1)) * sqr(f2(r2));
    if (w == 0.0) return 0.0;
    const double k = kernel_K(d, s, {r1, r2, c});
    return w * phi(s, r1) * phi(s, r2) * k * angular_weight(dim, c) * std::pow(r1 * r2, dim - 1);
  };
  AxisBounds second = radial_axis(f2);
  second.bounds = [&f1, hi = second.bounds](std::span<const double> outer) {
    return f1(outer[0]) == 0.0 ? std::pair{0.0, 0.0} : hi(outer);
  };
  const std::array<AxisBounds, 3> axes = {radial_axis(f1), second, cosine_axis(dim)};
  return quad::integrate_iterated(f, axes, cfg).scaled(pref);
}

QuadratureResult bilinear_lhs(Dimension d, Mass s, const RadialProfile& f1, const RadialProfile& f2,
                              SheetSigns signs, const QuadratureConfig& cfg) {
  require_d_at_least_two(d, "bilinear_lhs");
  cfg.validate();
  if (empty_support(f1) || empty_support(f2)) return {};
  const int dim = d.value();
  const DeltaPairing P{d, s, signs, f1, f2, {}};
  const bool mixed = !signs.same_sheet();
  double outer_hi = quad::kInfinity;
  if (f1.compact() && f2.compact()) {
    outer_hi = mixed ? f1.support_max + f2.support_max : phi(s, f1.support_max) + phi(s, f2.support_max);
  }
  const double scale = 0.5 * std::max(f1.decay_scale, f2.decay_scale);
  const double pref = std::pow(kTwoPi, 1 - 3 * dim) * sphere_measure(d);
  return integrate_pairing_square(P, mixed, outer_hi, scale, cfg).scaled(pref);
}

double carneiro_term(Dimension d, Mass s, const RadialProfile& f, const QuadratureConfig& cfg) {
  require_d_at_least_two(d, "carneiro_term");
  const int dim = d.value();
  const auto moment = radial_integral(
      d, f,
      [&](double r) {
        const double v = f(r);
        return v == 0.0 ? 0.0 : v * v * phi(s, r) * r;
      },
      cfg);
  EndpointBehavior ends;
  if (dim != 3) {
    ends.left_exponent = 0.5 * (dim - 3);
    ends.right_exponent = 0.5 * (dim - 3);
  }
  ends.initial_panels = 2;
  const auto angular = quad::integrate_1d([&](double c) { return c * angular_weight(dim, c); }, -1.0, 1.0, cfg, ends);
  return sphere_measure(d) * sphere_measure(Dimension(dim - 1)) * sqr(moment.value) * angular.value;
}

double carneiro_line(const LineProfile& g, const QuadratureConfig& cfg) {
  std::complex<double> total = 0.0;
  for (const Interval& iv : g.support) {
    if (!(iv.hi > iv.lo)) continue;
    const auto re = quad::integrate_1d([&](double y) { return y * g(y).real(); }, iv.lo, iv.hi, cfg);
    const auto im = quad::integrate_1d([&](double y) { return y * g(y).imag(); }, iv.lo, iv.hi, cfg);
    total += std::complex<double>(re.value, im.value);
  }
  return std::norm(total);
}

QuotientFlavor parse_flavor(std::string_view name) {
  if (name == "(s)-norm" || name == "s-norm" || name == "norm-s") return QuotientFlavor::NormS;
  if (name == "H^{1/2}" || name == "H1/2" || name == "h-half") return QuotientFlavor::HHalf;
  if (name == "H^{1}" || name == "H1" || name == "h1") return QuotientFlavor::HOne;
  throw DomainError("unknown quotient flavor: " + std::string(name));
}

std::string_view flavor_name(QuotientFlavor flavor) {
  switch (flavor) {
    case QuotientFlavor::NormS:
      return "(s)-norm";
    case QuotientFlavor::HHalf:
      return "H^{1/2}";
    case QuotientFlavor::HOne:
      return "H^{1}";
  }
  return "";
}

double flavor_sharp_constant(Dimension d, QuotientFlavor flavor) {
  const double pi = std::numbers::pi;
  switch (flavor) {
    case QuotientFlavor::NormS:
      if (d.value() != 5) break;
      return 1.0 / (24.0 * pi * pi);
    case QuotientFlavor::HHalf:
      if (d.value() == 2) return 1.0 / (32.0 * std::pow(pi, 4));
      if (d.value() == 3) return std::pow(kTwoPi, -7);
      break;
    case QuotientFlavor::HOne:
      if (d.value() != 5) break;
      return 1.0 / (24.0 * pi * pi) * std::pow(kTwoPi, -10);
  }
  throw DomainError("flavor_sharp_constant: flavor does not apply in this dimension");
}

QuotientResult strichartz_quotient(Dimension d, Mass s, const RadialProfile& f, QuotientFlavor flavor,
                                   const QuadratureConfig& cfg) {
  (void)flavor_sharp_constant(d, flavor);
  if (flavor != QuotientFlavor::NormS && s.value() != 1.0) {
    throw DomainError("strichartz_quotient: Sobolev flavors are stated for s = 1");
  }
  QuotientResult out;
  switch (flavor) {
    case QuotientFlavor::NormS:
      out.denominator = norm_s(f, d, s, cfg).value4;
      break;
    case QuotientFlavor::HHalf:
      out.denominator = sqr(sqr(hm_norm(f, d, 0.5, cfg)));
      break;
    case QuotientFlavor::HOne:
      out.denominator = sqr(sqr(hm_norm(f, d, 1.0, cfg)));
      break;
  }
  if (!(out.denominator > 0.0)) throw DomainError("strichartz_quotient: degenerate input, zero denominator");
  const auto lhs = bilinear_lhs(d, s, f, f, SheetSigns::plus_plus(), cfg);
  out.numerator = lhs.value;
  out.value = lhs.value / out.denominator;
  out.error_estimate = lhs.error_estimate / out.denominator;
  return out;
}

std::pair<RadialProfile, RadialProfile> split_cauchy_data(const CauchyData& data) {
  const Mass one(1.0);
  auto make = [&](double sign, const char* tag) {
    RadialProfile p;
    p.eval = [u0 = data.u0, u1 = data.u1, sign, one](double r) { return 0.5 * (u0(r) + sign * u1(r) / phi(one, r)); };
    p.decay_scale = std::max(data.u0.decay_scale, data.u1.decay_scale);
    p.support_max = std::max(data.u0.support_max, data.u1.support_max);
    p.label = std::string(tag) + "(" + data.u0.label + "," + data.u1.label + ")";
    return p;
  };
  return {make(1.0, "f+"), make(-1.0, "f-")};
}

FullSolutionResult full_solution_l4(const CauchyData& data, const QuadratureConfig& cfg) {
  const Dimension d(5);
  const Mass s(1.0);
  const auto [fp, fm] = split_cauchy_data(data);
  const auto pp = bilinear_lhs(d, s, fp, fp, SheetSigns::plus_plus(), cfg);
  const auto mm = bilinear_lhs(d, s, fm, fm, SheetSigns::minus_minus(), cfg);
  const auto pm = bilinear_lhs(d, s, fp, fm, SheetSigns::plus_minus(), cfg);
  FullSolutionResult out;
  out.plus_plus = pp.value;
  out.minus_minus = mm.value;
  out.plus_minus = pm.value;
  out.l4_fourth = pp.value + mm.value + 4.0 * pm.value;
  out.x = std::sqrt(std::max(0.0, pp.value));
  out.y = std::sqrt(std::max(0.0, mm.value));
  out.error_estimate = pp.error_estimate + mm.error_estimate + 4.0 * pm.error_estimate;
  return out;
}

PolyPair poly_sharp(double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("poly_sharp: X and Y must be >= 0");
  return {x * x + y * y + 4.0 * x * y, 1.5 * (x + y) * (x + y)};
}

}  // namespace kgsharp
