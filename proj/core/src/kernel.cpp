#include "kgsharp/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kgsharp {

namespace {

void check_magnitude(double x, const char* what) {
  if (!(std::abs(x) <= kMaxMagnitude)) {
    throw DomainError(std::string(what) + " exceeds the supported magnitude 1e8");
  }
}

void check_point(const KernelPoint& p) {
  if (!(p.r1 >= 0.0) || !(p.r2 >= 0.0)) throw DomainError("KernelPoint: radii must be >= 0");
  if (!(std::abs(p.c) <= 1.0)) throw DomainError("KernelPoint: |c| must be <= 1");
  check_magnitude(p.r1, "r1");
  check_magnitude(p.r2, "r2");
}

}  // namespace

Dimension::Dimension(int d) : d_(d) {
  if (d < 1) throw DomainError("Dimension: d must be >= 1");
}

Mass::Mass(double s) : s_(s) {
  if (!(s >= 0.0)) throw DomainError("Mass: s must be >= 0");
  check_magnitude(s, "s");
}

double phi(Mass s, double r) {
  if (!(r >= 0.0)) throw DomainError("phi: r must be >= 0");
  return std::hypot(s.value(), r);
}

double kernel_base(Mass s, KernelPoint p) {
  check_point(p);
  const double sv = s.value();
  const double p1 = phi(s, p.r1);
  const double p2 = phi(s, p.r2);
  // phi phi' - r1 r2 - s^2 = s^2 (r1 - r2)^2 / (phi phi' + r1 r2 + s^2)
  const double diag = sv == 0.0 ? 0.0 : sv * sv * (p.r1 - p.r2) * (p.r1 - p.r2) / (p1 * p2 + p.r1 * p.r2 + sv * sv);
  return diag + p.r1 * p.r2 * (1.0 - p.c);
}

double kernel_K(Dimension d, Mass s, KernelPoint p) {
  const int dim = d.value();
  if (dim == 1) throw DomainError("kernel_K: d = 1 is handled by line_kernel");
  const double base = kernel_base(s, p);
  const double sv = s.value();
  const double denom_base = base + 2.0 * sv * sv;
  if (sv == 0.0) {
    // numerator and denominator share the base; K_0 = base^{(d-3)/2}
    if (dim == 2) {
      if (!(base > 0.0)) throw SingularPointError("kernel_K: d = 2, s = 0 is singular where y1 and y2 are parallel");
      return 1.0 / std::sqrt(base);
    }
    if (dim == 3) return 1.0;
    return std::pow(base, 0.5 * (dim - 3));
  }
  const double numerator = dim == 2 ? 1.0 : std::pow(base, 0.5 * (dim - 2));
  return numerator / std::sqrt(denom_base);
}

double line_jacobian_denominator(Mass s, double y1, double y2) {
  check_magnitude(y1, "y1");
  check_magnitude(y2, "y2");
  const double p1 = phi(s, std::abs(y1));
  const double p2 = phi(s, std::abs(y2));
  if (y1 * y2 > 0.0) {
    // (phi1 y2)^2 - (phi2 y1)^2 = s^2 (y2 - y1)(y2 + y1)
    const double sv = s.value();
    return std::abs(sv * sv * (y2 - y1) * (y2 + y1) / (p1 * y2 + p2 * y1));
  }
  return std::abs(p1 * y2 - p2 * y1);
}

double line_kernel(Mass s, double y1, double y2) {
  const double den = line_jacobian_denominator(s, y1, y2);
  if (!(den > 0.0)) throw SingularPointError("line_kernel: K_s is singular on the diagonal y1 = y2");
  return 1.0 / den;
}

double sphere_measure(Dimension d) {
  const double half = 0.5 * d.value();
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double kg_constant(Dimension d) {
  const int dim = d.value();
  return std::pow(2.0, -0.5 * (dim - 1)) * sphere_measure(d) / std::pow(2.0 * std::numbers::pi, 3 * dim - 1);
}

KernelBound kernel_bound(Dimension d, Mass s, KernelPoint p) {
  check_point(p);
  const double sv = s.value();
  switch (d.value()) {
    case 1: {
      if (!(sv > 0.0)) throw DomainError("kernel_bound: d = 1 requires s > 0");
      if (std::abs(p.c) != 1.0) throw DomainError("kernel_bound: d = 1 requires c = +1 or -1");
      const double y1 = p.r1;
      const double y2 = p.c * p.r2;
      if (y1 == y2) throw SingularPointError("kernel_bound: d = 1 diagonal y1 = y2");
      const double value = line_kernel(s, y1, y2);
      const double bound = std::pow(sv * sv + y1 * y1, 0.25) * std::pow(sv * sv + y2 * y2, 0.25) /
                           (sv * sv * std::abs(y1 - y2));
      return {value, bound};
    }
    case 2:
      if (sv != 1.0) throw DomainError("kernel_bound: d = 2 bound is stated for s = 1");
      return {kernel_K(d, s, p), 1.0 / std::numbers::sqrt2};
    case 3:
      if (sv != 1.0) throw DomainError("kernel_bound: d = 3 bound is stated for s = 1");
      return {kernel_K(d, s, p), 1.0};
    default:
      throw DomainError("kernel_bound: only d = 1, 2, 3 carry a pointwise bound");
  }
}

}  // namespace kgsharp
