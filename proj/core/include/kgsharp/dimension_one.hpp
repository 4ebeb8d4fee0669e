#pragma once

// The one-dimensional bilinear identity: both sides of the weighted L^2
// identity for e^{it phi} f1 e^{it phi} f2 on R^{1+1}, the support
// preconditions, an independent evaluation through the (u, v) change of
// variables and the Ozawa-Rogers type bound.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "kgsharp/kernel.hpp"
#include "kgsharp/quadrature.hpp"

namespace kgsharp {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Fourier-side profile on the line, vanishing outside a finite union of intervals.
struct LineProfile {
  std::function<std::complex<double>(double)> eval;
  std::vector<Interval> support;
  std::string label;

  std::complex<double> operator()(double y) const;
  [[nodiscard]] LineProfile scaled(double factor) const;

  static LineProfile indicator(Interval i);
};

// Minimum gap between support intervals of the two profiles.
inline constexpr double kMinSupportGap = 1e-6;

struct SupportRelation {
  bool disjoint = false;          // gap >= kMinSupportGap between every pair of intervals
  bool disjoint_angular = false;  // y1 y2 < 0 on the product of supports
  [[nodiscard]] bool overlapping() const { return !disjoint; }
};

SupportRelation support_relation(const LineProfile& f1, const LineProfile& f2);

// Disjoint supports for s > 0, disjoint angular supports for s = 0.
bool admissible(Mass s, const LineProfile& f1, const LineProfile& f2);

quad::QuadratureResult identity_rhs(Mass s, const LineProfile& f1, const LineProfile& f2,
                                    const quad::QuadratureConfig& cfg);

enum class LhsPath {
  Jacobian,  // integrand |f1|^2 |f2|^2 phi phi' / |y1 phi' - y2 phi|
  UV,        // ||H||^2 assembled in (u, v) = (y1 - y2, phi(y1) - phi(y2))
};

quad::QuadratureResult identity_lhs(Mass s, const LineProfile& f1, const LineProfile& f2,
                                    const quad::QuadratureConfig& cfg, LhsPath path = LhsPath::Jacobian);

struct InjectivityReport {
  bool injective = true;
  double worst_overlap = 0.0;  // largest overlap of two image strips on the u-grid
  double u_at_worst = 0.0;
};

// Checks on a u-grid of the given spacing that the images of different
// support rectangles under (u, v) do not overlap.
InjectivityReport check_injectivity(Mass s, const LineProfile& f1, const LineProfile& f2, double spacing = 1e-3);

struct BoundPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// lhs = identity_lhs at s = 1, rhs = (2pi)^{-2} int int |f1|^2 |f2|^2
// (1 + y1^2)^{3/4} (1 + y2^2)^{3/4} / |y1 - y2|.
BoundPair ozawa_rogers_bound(const LineProfile& f1, const LineProfile& f2, const quad::QuadratureConfig& cfg);

}  // namespace kgsharp
