#pragma once

// Closed-form scalar quantities: the dispersion relation phi_s, the bilinear
// kernel K_s in reduced (r1, r2, cos) coordinates, the sharp constant KG(d),
// unit-sphere measures and the pointwise kernel bounds for d = 1, 2, 3.

#include <stdexcept>

namespace kgsharp {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised where K_s is not defined (vanishing denominator or the d = 1 diagonal).
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Spatial dimension d >= 1.
class Dimension {
 public:
  explicit Dimension(int d);
  [[nodiscard]] int value() const noexcept { return d_; }
  friend bool operator==(Dimension, Dimension) = default;

 private:
  int d_;
};

// Klein-Gordon mass s >= 0.
class Mass {
 public:
  explicit Mass(double s);
  [[nodiscard]] double value() const noexcept { return s_; }

 private:
  double s_;
};

// |y1|, |y2| and the cosine of the angle between y1 and y2. For d = 1 the
// cosine is +1 or -1 and encodes the relative sign of y1 and y2.
struct KernelPoint {
  double r1 = 0.0;
  double r2 = 0.0;
  double c = 0.0;
};

// Inputs above this magnitude are rejected to keep the squared identities finite.
inline constexpr double kMaxMagnitude = 1e8;

double phi(Mass s, double r);

// phi phi' - r1 r2 c - s^2, evaluated without cancellation on the diagonal.
double kernel_base(Mass s, KernelPoint p);

// K_s(y1, y2) for d >= 2.
double kernel_K(Dimension d, Mass s, KernelPoint p);

// K_s for d = 1 at signed frequencies y1, y2:
// [s^2 (y1^2 + y2^2) + 2 y1^2 y2^2 - 2 y1 y2 phi phi']^{-1/2}.
double line_kernel(Mass s, double y1, double y2);

// |phi_s(|y1|) y2 - phi_s(|y2|) y1|, stable when y1 and y2 are close.
double line_jacobian_denominator(Mass s, double y1, double y2);

double kg_constant(Dimension d);

// Surface measure |S^{d-1}| of the unit sphere in R^d.
double sphere_measure(Dimension d);

struct KernelBound {
  double value = 0.0;
  double bound = 0.0;
};

// Pointwise upper bounds for K_s: d = 1 (any s > 0, off the diagonal),
// d = 2 and d = 3 at s = 1.
KernelBound kernel_bound(Dimension d, Mass s, KernelPoint p);

}  // namespace kgsharp
