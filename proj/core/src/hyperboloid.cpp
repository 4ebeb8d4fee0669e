#include "kgsharp/hyperboloid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kgsharp {

using quad::EndpointBehavior;
using quad::QuadratureConfig;
using quad::QuadratureResult;

namespace {

void check_signs(SheetSigns signs) {
  if (std::abs(signs.eps1) != 1 || std::abs(signs.eps2) != 1) throw DomainError("SheetSigns: entries must be +1 or -1");
}

void check_point(SpectralPoint p) {
  if (!(p.rho >= 0.0)) throw DomainError("SpectralPoint: rho must be >= 0");
  if (!std::isfinite(p.tau)) throw DomainError("SpectralPoint: tau must be finite");
}

double pair_weight(const DeltaPairing& P, double r, double q, double c) {
  return P.extra_kernel ? P.extra_kernel(r, q, c) : 1.0;
}

// (1 - u^2)^{(d-3)/2} from the factored form of 1 - u^2.
double angular_power(int d, double one_minus_u2) {
  if (d == 3) return 1.0;
  if (!(one_minus_u2 > 0.0)) return 0.0;
  return std::pow(one_minus_u2, 0.5 * (d - 3));
}

// Cosine between y1 and y2 = xi - y1 given |y1| = r, |y2| = q, |xi| = rho.
double pair_cosine(double rho, double r, double q) {
  if (r == 0.0 || q == 0.0) return 0.0;
  return std::clamp((rho * rho - r * r - q * q) / (2.0 * r * q), -1.0, 1.0);
}

QuadratureResult rho_zero_branch(const DeltaPairing& P, SpectralPoint p, const NodeObserver& observer) {
  QuadratureResult out;
  if (!P.signs.same_sheet()) return out;
  const double t = P.signs.eps1 * p.tau;
  const double sv = P.s.value();
  if (t < 2.0 * sv) return out;
  const double rstar = std::sqrt(std::max(0.0, (0.5 * t - sv) * (0.5 * t + sv)));
  const int d = P.d.value();
  if (rstar == 0.0 && d > 2) return out;
  if (observer) observer({rstar, rstar, -1.0});
  const double k = pair_weight(P, rstar, rstar, -1.0);
  out.value = sphere_measure(P.d) * std::pow(rstar, d - 2) * phi(P.s, rstar) * P.w1(rstar) * P.w2(rstar) * k / 2.0;
  return out;
}

}  // namespace

bool RadialRange::bounded() const { return std::isfinite(hi); }

bool support_check(Dimension d, Mass s, SpectralPoint p, SheetSigns signs) {
  (void)d;
  check_signs(signs);
  check_point(p);
  const double edge = std::hypot(2.0 * s.value(), p.rho);
  if (signs == SheetSigns::plus_plus()) return p.tau >= edge;
  if (signs.eps1 == -1 && signs.eps2 == -1) return p.tau <= -edge;
  return std::abs(p.tau) <= edge;
}

std::optional<RadialRange> admissible_radii(Mass s, SpectralPoint p, SheetSigns signs) {
  check_signs(signs);
  check_point(p);
  const double rho = p.rho;
  const double tau = p.tau;
  const double sv = s.value();
  const double m = (tau - rho) * (tau + rho);
  if (m == 0.0) return std::nullopt;
  const double disc = 1.0 - 4.0 * sv * sv / m;
  if (disc < 0.0) return std::nullopt;
  const double spread = 0.5 * std::abs(tau) * std::sqrt(disc);
  const std::array<double, 2> roots = {0.5 * rho - spread, 0.5 * rho + spread};

  std::vector<double> radii;
  for (double t : roots) {
    const double a = phi(s, std::abs(t));
    const double b = phi(s, std::abs(rho - t));
    const double residual = signs.eps1 * a + signs.eps2 * b - tau;
    if (std::abs(residual) <= 1e-9 * (std::abs(tau) + a + b)) radii.push_back(std::abs(t));
  }
  if (radii.empty()) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(radii.begin(), radii.end());
  if (signs.same_sheet()) return RadialRange{*lo, *hi};
  return RadialRange{*lo, quad::kInfinity};
}

QuadratureResult delta_pairing_eval(const DeltaPairing& P, SpectralPoint p, const QuadratureConfig& cfg,
                                    const NodeObserver& observer) {
  cfg.validate();
  const int d = P.d.value();
  if (d < 2) throw DomainError("delta_pairing_eval: requires d >= 2");
  if (!support_check(P.d, P.s, p, P.signs)) return {};
  if (p.rho < kRhoZeroThreshold) return rho_zero_branch(P, p, observer);

  const auto range = admissible_radii(P.s, p, P.signs);
  if (!range) return {};

  const double rho = p.rho;
  const double tau = p.tau;
  const double sv = P.s.value();
  const int e1 = P.signs.eps1;
  const int e2 = P.signs.eps2;
  const double m = (tau - rho) * (tau + rho);
  const double gap = std::abs((std::abs(tau) - std::hypot(2.0 * sv, rho)) * (std::abs(tau) + std::hypot(2.0 * sv, rho)));
  const double kappa = std::sqrt(gap / std::abs(m));
  const double alpha = 0.5 * (d - 3);
  const double prefactor =
      sphere_measure(Dimension(d - 1)) * std::pow(2.0, 2 - d) * std::pow(gap, 0.5 * (d - 2)) / std::sqrt(std::abs(m));
  if (prefactor == 0.0) return {};

  // phi(|y1|) = e1 tau / 2 + (rho kappa / 2) t, with 1 - u^2 = (m - 4 s^2)(1 - t^2) / (4 |y1|^2).
  auto integrand = [&](double t) -> double {
    const double w = 0.5 * e1 * tau + 0.5 * rho * kappa * t;
    if (w < sv) return 0.0;
    const double phiq = e2 * (tau - e1 * w);
    if (phiq < sv) return 0.0;
    const double r = std::sqrt((w - sv) * (w + sv));
    const double q = std::sqrt((phiq - sv) * (phiq + sv));
    double c = -1.0;
    if (r > 0.0 && q > 0.0) {
      const double u = (rho + e1 * tau * kappa * t) / (2.0 * r);
      c = std::clamp((rho * u - r) / q, -1.0, 1.0);
    }
    if (observer) observer({r, q, c});
    const double weight = P.w1(r) * P.w2(q);
    if (weight == 0.0) return 0.0;
    const double k = pair_weight(P, r, q, c);
    const double base = std::abs((1.0 - t) * (1.0 + t));
    if (alpha < 0.0 && base == 0.0) return 0.0;
    const double ang = alpha == 0.0 ? 1.0 : std::pow(base, alpha);
    return weight * k * w * phiq * ang;
  };

  // Values of t where |y1| or |y2| leaves a compact support.
  const double half_width = 0.5 * rho * kappa;
  std::vector<double> cuts;
  if (half_width > 0.0) {
    if (P.w1.compact()) cuts.push_back((phi(P.s, P.w1.support_max) - 0.5 * e1 * tau) / half_width);
    if (P.w2.compact()) cuts.push_back((e1 * (tau - e2 * phi(P.s, P.w2.support_max)) - 0.5 * e1 * tau) / half_width);
  }

  if (range->bounded()) {
    EndpointBehavior ends;
    if (alpha != 0.0) {
      ends.left_exponent = alpha;
      ends.right_exponent = alpha;
    }
    for (double c : cuts) {
      if (c > -1.0 && c < 1.0) ends.breakpoints.push_back(c);
    }
    std::sort(ends.breakpoints.begin(), ends.breakpoints.end());
    ends.initial_panels = 4;
    return quad::integrate_1d(integrand, -1.0, 1.0, cfg, ends).scaled(prefactor);
  }
  // Mixed sheets: |y1| and |y2| both grow with t.
  if (!cuts.empty()) {
    const double cap = *std::min_element(cuts.begin(), cuts.end());
    if (!(cap > 1.0)) return {};
    EndpointBehavior ends;
    if (alpha != 0.0) ends.left_exponent = alpha;
    ends.initial_panels = 4;
    return quad::integrate_1d(integrand, 1.0, cap, cfg, ends).scaled(prefactor);
  }
  quad::SemiInfiniteOptions opts;
  opts.scale = std::max(P.w1.decay_scale, P.w2.decay_scale) / half_width;
  if (alpha != 0.0) opts.left_exponent = alpha;
  opts.initial_panels = 4;
  return quad::integrate_semi_infinite(integrand, 1.0, cfg, opts).scaled(prefactor);
}

double conv_closed_form(Dimension d, Mass s, SpectralPoint p) {
  check_point(p);
  const int dim = d.value();
  if (dim < 2) throw DomainError("conv_closed_form: requires d >= 2");
  const double sv = s.value();
  if (!support_check(d, s, p, SheetSigns::plus_plus())) return 0.0;
  const double m = (p.tau - p.rho) * (p.tau + p.rho);
  const double scale = sphere_measure(d) / std::pow(2.0, dim - 2);
  if (sv == 0.0) return scale * std::pow(m, 0.5 * (dim - 3));
  const double gap = std::max(0.0, m - 4.0 * sv * sv);
  return scale * std::pow(gap, 0.5 * (dim - 2)) / std::sqrt(m);
}

double cs_weight_constant(Dimension d) { return sphere_measure(d) * std::pow(2.0, -0.5 * (d.value() - 1)); }

QuadratureResult cs_weight_integral(Dimension d, Mass s, SpectralPoint p, const QuadratureConfig& cfg) {
  check_point(p);
  const double edge = std::hypot(2.0 * s.value(), p.rho);
  if (!(p.tau - edge > 1e-6 * std::abs(p.tau))) {
    throw DomainError("cs_weight_integral: point is not strictly inside the ++ support");
  }
  RadialProfile inv_phi{[s](double r) { return 1.0 / phi(s, r); }, 1.0, "1/phi"};
  DeltaPairing P{d, s, SheetSigns::plus_plus(), inv_phi, inv_phi,
                 [d, s](double r1, double r2, double c) { return 1.0 / kernel_K(d, s, {r1, r2, c}); }};
  return delta_pairing_eval(P, p, cfg);
}

double SpacetimePoint::interval() const {
  double n2 = 0.0;
  for (double x : xi) n2 += x * x;
  return tau * tau - n2;
}

SpacetimePoint lorentz_boost(const SpacetimePoint& p, double t) {
  if (!(std::abs(t) < 1.0)) throw DomainError("lorentz_boost: |t| must be < 1");
  if (p.xi.empty()) throw DomainError("lorentz_boost: xi must have at least one component");
  const double g = 1.0 / std::sqrt((1.0 - t) * (1.0 + t));
  SpacetimePoint out = p;
  out.xi[0] = (p.xi[0] + t * p.tau) * g;
  out.tau = (p.tau + t * p.xi[0]) * g;
  return out;
}

SpacetimePoint lorentz_reduce(const SpacetimePoint& p) {
  if (p.xi.empty()) throw DomainError("lorentz_reduce: xi must have at least one component");
  double norm = 0.0;
  for (double x : p.xi) norm = std::hypot(norm, x);
  if (!(p.tau > norm)) throw DomainError("lorentz_reduce: point must be future timelike");
  SpacetimePoint rotated{std::vector<double>(p.xi.size(), 0.0), p.tau};
  rotated.xi[0] = norm;
  SpacetimePoint out = lorentz_boost(rotated, -norm / p.tau);
  out.xi[0] = 0.0;
  out.tau = std::sqrt((p.tau - norm) * (p.tau + norm));
  return out;
}

namespace {

double gaussian(double x, double h) {
  const double z = x / h;
  return std::exp(-0.5 * z * z) / (h * std::sqrt(2.0 * std::numbers::pi));
}

constexpr double kWindow = 12.0;

// |y2| range whose energy lies within the Gaussian window around target.
std::optional<std::pair<double, double>> energy_window(double s, double target, double h) {
  const double lo_e = std::max(s, target - kWindow * h);
  const double hi_e = target + kWindow * h;
  if (!(hi_e > lo_e)) return std::nullopt;
  return std::pair{std::sqrt((lo_e - s) * (lo_e + s)), std::sqrt((hi_e - s) * (hi_e + s))};
}

QuadratureResult mollified_at_width(const DeltaPairing& P, SpectralPoint p, double h, const QuadratureConfig& cfg) {
  const int d = P.d.value();
  const double sv = P.s.value();
  const int e1 = P.signs.eps1;
  const int e2 = P.signs.eps2;
  const double rho = p.rho;
  const double tau = p.tau;

  // Largest |y1| whose energy can reach the window when both sheets agree.
  double r_cap = quad::kInfinity;
  if (P.signs.same_sheet()) {
    const double e_cap = e1 * tau - sv + kWindow * h;
    if (e_cap < sv) return {};
    r_cap = std::sqrt((e_cap - sv) * (e_cap + sv));
  }
  const double scale = std::max({P.w1.decay_scale, P.w2.decay_scale, h});

  if (rho < kRhoZeroThreshold) {
    auto f = [&](double r) {
      const double w = P.w1(r) * P.w2(r);
      if (w == 0.0) return 0.0;
      const double e = tau - (e1 + e2) * phi(P.s, r);
      return std::pow(r, d - 1) * w * pair_weight(P, r, r, -1.0) * gaussian(e, h);
    };
    const double factor = sphere_measure(P.d);
    if (std::isfinite(r_cap)) {
      EndpointBehavior ends;
      ends.initial_panels = 32;
      return quad::integrate_1d(f, 0.0, r_cap, cfg, ends).scaled(factor);
    }
    quad::SemiInfiniteOptions opts;
    opts.scale = scale;
    opts.initial_panels = 8;
    return quad::integrate_semi_infinite(f, 0.0, cfg, opts).scaled(factor);
  }

  const double alpha = 0.5 * (d - 3);
  const QuadratureConfig inner_cfg = cfg.inner();
  auto outer = [&](double r) -> quad::Sample {
    if (r <= 0.0) return {};
    const double w1 = P.w1(r);
    if (w1 == 0.0) return {};
    const double target = e2 * (tau - e1 * phi(P.s, r));
    const auto win = energy_window(sv, target, h);
    if (!win) return {};
    const double geo_lo = std::abs(rho - r);
    const double geo_hi = rho + r;
    const double q_lo = std::max(win->first, geo_lo);
    const double q_hi = std::min(win->second, geo_hi);
    if (!(q_hi > q_lo)) return {};
    auto g = [&](double q) {
      const double w2 = P.w2(q);
      if (w2 == 0.0 || q <= 0.0) return 0.0;
      const double two_rho_r = 2.0 * rho * r;
      const double one_minus_u = (q * q - (rho - r) * (rho - r)) / two_rho_r;
      const double one_plus_u = ((rho + r) * (rho + r) - q * q) / two_rho_r;
      const double e = tau - e1 * phi(P.s, r) - e2 * phi(P.s, q);
      const double c = pair_cosine(rho, r, q);
      return w2 * pair_weight(P, r, q, c) * (q / (rho * r)) * angular_power(d, one_minus_u * one_plus_u) *
             gaussian(e, h);
    };
    EndpointBehavior ends;
    if (alpha != 0.0) {
      if (q_lo == geo_lo) ends.left_exponent = alpha;
      if (q_hi == geo_hi) ends.right_exponent = alpha;
    }
    ends.initial_panels = 2;
    const auto res = quad::integrate_1d(g, q_lo, q_hi, inner_cfg, ends);
    const double weight = w1 * std::pow(r, d - 1);
    return {weight * res.value, weight * res.error_estimate};
  };
  const double factor = sphere_measure(Dimension(d - 1));
  if (std::isfinite(r_cap)) {
    EndpointBehavior ends;
    ends.initial_panels = 32;
    return quad::integrate_1d_nested(outer, 0.0, r_cap, cfg, ends).scaled(factor);
  }
  quad::SemiInfiniteOptions opts;
  opts.scale = scale;
  opts.initial_panels = 8;
  return quad::integrate_semi_infinite_nested(outer, 0.0, cfg, opts).scaled(factor);
}

}  // namespace

MollifiedResult mollified_delta_oracle(const DeltaPairing& P, SpectralPoint p, std::span<const double> widths,
                                       const QuadratureConfig& cfg) {
  cfg.validate();
  check_point(p);
  check_signs(P.signs);
  if (P.d.value() < 2) throw DomainError("mollified_delta_oracle: requires d >= 2");
  if (widths.empty()) throw DomainError("mollified_delta_oracle: at least one width is required");
  for (double h : widths) {
    if (!(h > 0.0)) throw DomainError("mollified_delta_oracle: widths must be positive");
  }

  MollifiedResult out;
  for (double h : widths) out.per_width.push_back(mollified_at_width(P, p, h, cfg).value);

  // Neville extrapolation to h = 0 in the variable h^2.
  const std::size_t n = widths.size();
  std::vector<double> t(out.per_width);
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const double xa = widths[i - level] * widths[i - level];
      const double xb = widths[i] * widths[i];
      t[i] = (xa * t[i] - xb * t[i - 1]) / (xa - xb);
    }
  }
  out.value = t[n - 1];

  for (std::size_t i = 2; i < n; ++i) {
    const double prev = out.per_width[i - 1] - out.per_width[i - 2];
    const double next = out.per_width[i] - out.per_width[i - 1];
    const double noise = 1e-12 * std::abs(out.per_width[i]);
    if (std::abs(prev) <= noise && std::abs(next) <= noise) continue;
    if (prev * next < 0.0 || std::abs(next) > std::abs(prev)) out.monotone = false;
  }
  return out;
}

}  // namespace kgsharp
