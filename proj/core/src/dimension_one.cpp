#include "kgsharp/dimension_one.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace kgsharp {

using quad::AxisBounds;
using quad::QuadratureConfig;
using quad::QuadratureResult;

std::complex<double> LineProfile::operator()(double y) const {
  for (const Interval& iv : support) {
    if (y >= iv.lo && y <= iv.hi) return eval(y);
  }
  return 0.0;
}

LineProfile LineProfile::scaled(double factor) const {
  LineProfile p = *this;
  p.eval = [f = eval, factor](double y) { return factor * f(y); };
  return p;
}

LineProfile LineProfile::indicator(Interval i) {
  if (!(i.hi > i.lo)) throw DomainError("LineProfile::indicator: empty interval");
  return LineProfile{[](double) { return std::complex<double>(1.0, 0.0); }, {i}, "chi"};
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double gap(Interval a, Interval b) { return std::max(a.lo - b.hi, b.lo - a.hi); }

bool opposite_signs(Interval a, Interval b) {
  return (a.lo >= 0.0 && b.hi <= 0.0) || (a.hi <= 0.0 && b.lo >= 0.0);
}

double dphi(Mass s, double y) {
  const double p = phi(s, std::abs(y));
  return p > 0.0 ? y / p : 0.0;
}

template <class F>
QuadratureResult over_rectangles(const LineProfile& f1, const LineProfile& f2, F&& integrand,
                                 const QuadratureConfig& cfg) {
  QuadratureResult total;
  for (const Interval& a : f1.support) {
    for (const Interval& b : f2.support) {
      if (!(a.hi > a.lo) || !(b.hi > b.lo)) continue;
      const std::array<AxisBounds, 2> axes = {
          AxisBounds{[a](std::span<const double>) { return std::pair{a.lo, a.hi}; }, {}, 1.0},
          AxisBounds{[b](std::span<const double>) { return std::pair{b.lo, b.hi}; }, {}, 1.0}};
      total += quad::integrate_iterated([&](std::span<const double> x) { return integrand(x[0], x[1]); }, axes, cfg);
    }
  }
  return total;
}

void require_admissible(Mass s, const LineProfile& f1, const LineProfile& f2, const char* who) {
  if (!admissible(s, f1, f2)) {
    throw DomainError(std::string(who) +
                      (s.value() > 0.0 ? ": supports must be disjoint (gap >= 1e-6)"
                                       : ": s = 0 requires disjoint angular supports"));
  }
}

// Range of y1 in rectangle a x b with y1 - y2 = u.
std::optional<Interval> fibre(Interval a, Interval b, double u) {
  const double lo = std::max(a.lo, b.lo + u);
  const double hi = std::min(a.hi, b.hi + u);
  if (!(hi > lo)) return std::nullopt;
  return Interval{lo, hi};
}

double image_v(Mass s, double y1, double u) { return phi(s, std::abs(y1)) - phi(s, std::abs(y1 - u)); }

// Solves phi(y) - phi(y - u) = v for y in [lo, hi], where the left side is monotone.
double invert_fibre(Mass s, double u, double v, double lo, double hi) {
  const bool increasing = image_v(s, hi, u) >= image_v(s, lo, u);
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double g = image_v(s, y, u) - v;
    if (g == 0.0) return y;
    if ((g > 0.0) == increasing) {
      hi = y;
    } else {
      lo = y;
    }
    const double slope = dphi(s, y) - dphi(s, y - u);
    double next = slope != 0.0 ? y - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 1e-15 * (1.0 + std::abs(y))) return next;
    y = next;
  }
  return y;
}

}  // namespace

SupportRelation support_relation(const LineProfile& f1, const LineProfile& f2) {
  SupportRelation rel{true, true};
  for (const Interval& a : f1.support) {
    for (const Interval& b : f2.support) {
      if (gap(a, b) < kMinSupportGap) rel.disjoint = false;
      if (!opposite_signs(a, b)) rel.disjoint_angular = false;
    }
  }
  return rel;
}

bool admissible(Mass s, const LineProfile& f1, const LineProfile& f2) {
  const auto rel = support_relation(f1, f2);
  return s.value() > 0.0 ? rel.disjoint : rel.disjoint_angular;
}

QuadratureResult identity_rhs(Mass s, const LineProfile& f1, const LineProfile& f2, const QuadratureConfig& cfg) {
  require_admissible(s, f1, f2, "identity_rhs");
  const double sv = s.value();
  const double pref = 0.5 * kg_constant(Dimension(1));
  auto integrand = [&](double y1, double y2) {
    const double w = std::norm(f1(y1)) * std::norm(f2(y2));
    if (w == 0.0) return 0.0;
    const double p1 = phi(s, std::abs(y1));
    const double p2 = phi(s, std::abs(y2));
    const double k2 = sv * sv * (y1 * y1 + y2 * y2) + 2.0 * y1 * y1 * y2 * y2 - 2.0 * y1 * y2 * p1 * p2;
    if (!(k2 > 0.0)) throw SingularPointError("identity_rhs: kernel is singular inside the support product");
    return w * p1 * p2 / std::sqrt(k2);
  };
  return over_rectangles(f1, f2, integrand, cfg).scaled(pref);
}

QuadratureResult identity_lhs(Mass s, const LineProfile& f1, const LineProfile& f2, const QuadratureConfig& cfg,
                              LhsPath path) {
  require_admissible(s, f1, f2, "identity_lhs");
  const double pref = 1.0 / (kTwoPi * kTwoPi);
  if (path == LhsPath::Jacobian) {
    auto integrand = [&](double y1, double y2) {
      const double w = std::norm(f1(y1)) * std::norm(f2(y2));
      if (w == 0.0) return 0.0;
      const double den = line_jacobian_denominator(s, y1, y2);
      if (!(den > 0.0)) throw SingularPointError("identity_lhs: Jacobian vanishes inside the support product");
      return w * phi(s, std::abs(y1)) * phi(s, std::abs(y2)) / den;
    };
    return over_rectangles(f1, f2, integrand, cfg).scaled(pref);
  }

  const auto inj = check_injectivity(s, f1, f2);
  if (!inj.injective) {
    throw DomainError("identity_lhs: (u, v) map is not injective on the support product (overlap " +
                      std::to_string(inj.worst_overlap) + " at u = " + std::to_string(inj.u_at_worst) + ")");
  }
  QuadratureResult total;
  for (const Interval& a : f1.support) {
    for (const Interval& b : f2.support) {
      if (!(a.hi > a.lo) || !(b.hi > b.lo)) continue;
      const double u_lo = a.lo - b.hi;
      const double u_hi = a.hi - b.lo;
      AxisBounds u_axis{[=](std::span<const double>) { return std::pair{u_lo, u_hi}; }, {}, 1.0};
      for (double corner : {a.lo - b.lo, a.hi - b.hi}) {
        if (corner > u_lo && corner < u_hi) u_axis.ends.breakpoints.push_back(corner);
      }
      std::sort(u_axis.ends.breakpoints.begin(), u_axis.ends.breakpoints.end());
      AxisBounds v_axis{[=](std::span<const double> outer) {
                          const auto fib = fibre(a, b, outer[0]);
                          if (!fib) return std::pair{0.0, 0.0};
                          const double v1 = image_v(s, fib->lo, outer[0]);
                          const double v2 = image_v(s, fib->hi, outer[0]);
                          return std::pair{std::min(v1, v2), std::max(v1, v2)};
                        },
                        {},
                        1.0};
      const std::array<AxisBounds, 2> axes = {u_axis, v_axis};
      auto h = [&](std::span<const double> x) {
        const double u = x[0];
        const auto fib = fibre(a, b, u);
        if (!fib) return 0.0;
        const double y1 = invert_fibre(s, u, x[1], fib->lo, fib->hi);
        const double y2 = y1 - u;
        const double w = std::norm(f1(y1)) * std::norm(f2(y2));
        if (w == 0.0) return 0.0;
        const double p1 = phi(s, std::abs(y1));
        const double p2 = phi(s, std::abs(y2));
        const double den = line_jacobian_denominator(s, y1, y2);
        if (!(den > 0.0)) throw SingularPointError("identity_lhs: Jacobian vanishes inside the support product");
        const double jac = den / (p1 * p2);
        return w / (jac * jac);
      };
      total += quad::integrate_iterated(h, axes, cfg);
    }
  }
  return total.scaled(pref);
}

InjectivityReport check_injectivity(Mass s, const LineProfile& f1, const LineProfile& f2, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("check_injectivity: spacing must be positive");
  std::vector<std::pair<Interval, Interval>> rects;
  double u_min = quad::kInfinity;
  double u_max = -quad::kInfinity;
  for (const Interval& a : f1.support) {
    for (const Interval& b : f2.support) {
      if (!(a.hi > a.lo) || !(b.hi > b.lo)) continue;
      rects.emplace_back(a, b);
      u_min = std::min(u_min, a.lo - b.hi);
      u_max = std::max(u_max, a.hi - b.lo);
    }
  }
  InjectivityReport rep;
  if (rects.size() < 2) return rep;
  const auto steps = static_cast<long>(std::ceil((u_max - u_min) / spacing));
  std::vector<Interval> strips;
  for (long i = 0; i <= steps; ++i) {
    const double u = std::min(u_max, u_min + static_cast<double>(i) * spacing);
    strips.clear();
    for (const auto& [a, b] : rects) {
      const auto fib = fibre(a, b, u);
      if (!fib) continue;
      const double v1 = image_v(s, fib->lo, u);
      const double v2 = image_v(s, fib->hi, u);
      strips.push_back({std::min(v1, v2), std::max(v1, v2)});
    }
    for (std::size_t p = 0; p < strips.size(); ++p) {
      for (std::size_t q = p + 1; q < strips.size(); ++q) {
        const double overlap = std::min(strips[p].hi, strips[q].hi) - std::max(strips[p].lo, strips[q].lo);
        if (overlap > 1e-12 * (1.0 + std::abs(strips[p].hi)) && overlap > rep.worst_overlap) {
          rep.injective = false;
          rep.worst_overlap = overlap;
          rep.u_at_worst = u;
        }
      }
    }
  }
  return rep;
}

BoundPair ozawa_rogers_bound(const LineProfile& f1, const LineProfile& f2, const QuadratureConfig& cfg) {
  const Mass one(1.0);
  require_admissible(one, f1, f2, "ozawa_rogers_bound");
  BoundPair out;
  out.lhs = identity_lhs(one, f1, f2, cfg).value;
  auto integrand = [&](double y1, double y2) {
    const double w = std::norm(f1(y1)) * std::norm(f2(y2));
    if (w == 0.0) return 0.0;
    return w * std::pow(1.0 + y1 * y1, 0.75) * std::pow(1.0 + y2 * y2, 0.75) / std::abs(y1 - y2);
  };
  out.rhs = over_rectangles(f1, f2, integrand, cfg).value / (kTwoPi * kTwoPi);
  return out;
}

}  // namespace kgsharp
