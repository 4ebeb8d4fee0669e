#pragma once

// Geometry of the sheet measures: support regions of the sheet convolutions,
// the delta-restricted bilinear pairing evaluated as a single radial
// integral, the closed form of sigma_s * sigma_s, the Cauchy-Schwarz weight,
// Lorentz boosts and a mollified-delta oracle for the pairing.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kgsharp/kernel.hpp"
#include "kgsharp/profile.hpp"
#include "kgsharp/quadrature.hpp"

namespace kgsharp {

// Space-time frequency (|xi|, tau) of a radially symmetric quantity.
struct SpectralPoint {
  double rho = 0.0;
  double tau = 0.0;
};

// Upper (+1) or lower (-1) hyperboloid sheet for each factor.
struct SheetSigns {
  int eps1 = 1;
  int eps2 = 1;

  static constexpr SheetSigns plus_plus() { return {1, 1}; }
  static constexpr SheetSigns minus_minus() { return {-1, -1}; }
  static constexpr SheetSigns plus_minus() { return {1, -1}; }
  [[nodiscard]] bool same_sheet() const { return eps1 == eps2; }
  friend bool operator==(SheetSigns, SheetSigns) = default;
};

// Extra weight k(|y1|, |y2|, cos angle(y1, y2)) inside the pairing.
using PairKernel = std::function<double(double r1, double r2, double c)>;

struct DeltaPairing {
  Dimension d;
  Mass s;
  SheetSigns signs;
  RadialProfile w1;
  RadialProfile w2;
  PairKernel extra_kernel;  // empty means k = 1
};

// Point on the constraint surface visited by the radial integration.
struct SupportNode {
  double r = 0.0;  // |y1|
  double q = 0.0;  // |y2|
  double c = 0.0;  // cosine between y1 and y2
};
using NodeObserver = std::function<void(const SupportNode&)>;

// Pairings with rho below this threshold use the exact rho = 0 branch.
inline constexpr double kRhoZeroThreshold = 1e-8;

bool support_check(Dimension d, Mass s, SpectralPoint p, SheetSigns signs);

// Range of |y1| over the constraint surface; hi is infinite for mixed sheets.
struct RadialRange {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] bool bounded() const;
};
std::optional<RadialRange> admissible_radii(Mass s, SpectralPoint p, SheetSigns signs);

quad::QuadratureResult delta_pairing_eval(const DeltaPairing& pairing, SpectralPoint p,
                                          const quad::QuadratureConfig& cfg,
                                          const NodeObserver& observer = {});

// sigma_s * sigma_s on the ++ support; depends on (rho, tau) only through tau^2 - rho^2.
double conv_closed_form(Dimension d, Mass s, SpectralPoint p);

// |S^{d-1}| 2^{-(d-1)/2}.
double cs_weight_constant(Dimension d);

// Pairing of 1/phi (x) 1/phi against 1/K_s. Refuses points within relative
// distance 1e-6 of the boundary of the ++ support.
quad::QuadratureResult cs_weight_integral(Dimension d, Mass s, SpectralPoint p,
                                          const quad::QuadratureConfig& cfg);

struct SpacetimePoint {
  std::vector<double> xi;
  double tau = 0.0;

  [[nodiscard]] double interval() const;  // tau^2 - |xi|^2
};

// Boost along the first spatial axis with velocity t, |t| < 1.
SpacetimePoint lorentz_boost(const SpacetimePoint& p, double t);

// Rotation of xi onto the first axis followed by the boost t = -|xi|/tau;
// maps a future timelike point to (0, sqrt(tau^2 - |xi|^2)).
SpacetimePoint lorentz_reduce(const SpacetimePoint& p);

struct MollifiedResult {
  double value = 0.0;
  bool monotone = true;  // false flags non-monotone convergence across widths
  std::vector<double> per_width;
};

inline constexpr std::array<double, 3> kDefaultMollifierWidths = {0.04, 0.02, 0.01};

// Replaces the energy delta by a Gaussian of width h, integrates over y1 in
// polar coordinates and extrapolates h -> 0 through the supplied widths.
MollifiedResult mollified_delta_oracle(const DeltaPairing& pairing, SpectralPoint p,
                                       std::span<const double> widths,
                                       const quad::QuadratureConfig& cfg);

}  // namespace kgsharp
