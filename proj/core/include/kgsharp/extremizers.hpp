#pragma once

// The extremizer family f_a = e^{-a phi_s}/phi_s and its normalization g_a,
// scaled norms and L^4 norms along a -> 0, the I/II moment integrals and the
// recursion between them, and concentration diagnostics for normalized
// profiles in d = 5.

#include <limits>
#include <string>
#include <vector>

#include "kgsharp/functionals.hpp"
#include "kgsharp/kernel.hpp"
#include "kgsharp/profile.hpp"
#include "kgsharp/quadrature.hpp"

namespace kgsharp {

struct ExtremizerParam {
  double a = 1.0;
  Mass s{1.0};
  Dimension d{5};

  void validate() const;
};

RadialProfile extremizer_profile(const ExtremizerParam& p);

// f_a / ||f_a||_(s).
RadialProfile normalized_g(const ExtremizerParam& p, const quad::QuadratureConfig& cfg);

// a^5 (2pi)^5 ||phi_s^beta f_a||^2 in d = 5 from the one-dimensional reduction.
quad::QuadratureResult beta_norm_scaled(const ExtremizerParam& p, double beta, const quad::QuadratureConfig& cfg);

// a^10 ||e^{it phi} f_a||^4_{L^4} in d = 5 through the closed form of sigma_s * sigma_s.
quad::QuadratureResult l4_fourth_power_scaled(const ExtremizerParam& p, const quad::QuadratureConfig& cfg);

// ||e^{it phi} f_a||^4_{L^4} in d = 5.
quad::QuadratureResult l4_fourth_power_closed(const ExtremizerParam& p, const quad::QuadratureConfig& cfg);

// Quotient of f_a against ||f_a||_(s)^4 computed from the scaled closed paths.
QuotientResult quotient_closed(const ExtremizerParam& p, const quad::QuadratureConfig& cfg);

enum class MomentKind { I, II };

// a^10 I_{j,k} or a^10 II_{j,k} by two-dimensional quadrature.
quad::QuadratureResult ijk_integral(MomentKind kind, int j, int k, double a, Mass s, const quad::QuadratureConfig& cfg);

// Limit of a^10 I_{j,k} as a -> 0: 9!/((2k+5) 2^10) when j + k = 2, zero when j + k < 2.
double ijk_limit(int j, int k);

// a^{6-2(j+k)} int e^{-2x} x^{2j} (x^2 - (2as)^2)^{(2k+3)/2} dx / (2k+3),
// equal to a^10 (II_{j+1,k-1} - II_{j,k}) for every a.
quad::QuadratureResult claim1_remainder(int j, int k, double a, Mass s, const quad::QuadratureConfig& cfg);

// Coefficient c_{j,k} of the expansion set T, zero outside T.
double expansion_coefficient(int j, int k, Mass s);

// |S^4|^3 / (2^6 (2pi)^14) sum_T c_{j,k} (a^10 I_{j,k} - 4 s^2 a^10 II_{j,k}).
quad::QuadratureResult expansion_assembly_scaled(double a, Mass s, const quad::QuadratureConfig& cfg);

struct Series {
  std::string name;
  std::vector<double> values;
  double limit = std::numeric_limits<double>::quiet_NaN();
  bool converged = true;
};

struct AsymptoticsReport {
  std::vector<double> a_grid;  // strictly decreasing
  std::vector<Series> quantities;

  [[nodiscard]] const Series& at(const std::string& name) const;
};

// Expansion quantities along a_grid: scaled beta norms, I_{j,k} for the pairs of
// the expansion set and the quotient of f_a.
AsymptoticsReport asymptotics_report(const std::vector<double>& a_grid, Mass s, const quad::QuadratureConfig& cfg);

// Series "II_{j,k}", "II_{j+1,k-1}", "gap" (their difference) and
// "remainder" (the exact value of the gap) along a_grid.
AsymptoticsReport claim1_check(int j, int k, const std::vector<double>& a_grid, Mass s,
                               const quad::QuadratureConfig& cfg);

struct ConcentrationDiagnostics {
  double half_norm = 0.0;   // ||phi_s^{1/2} g||_{L^2}
  double ball_mass = 0.0;   // Fourier-side L^2 norm of phi_s g^ on B(0, R)
  double carneiro = 0.0;    // I term
  double jn = 0.0;          // J term
  double phi_moment = 0.0;  // int |g^|^2 phi_s dy
};

ConcentrationDiagnostics concentration_diagnostics(const RadialProfile& g, Dimension d, Mass s, double R,
                                                   const quad::QuadratureConfig& cfg);

// J term integrated over H_s through the delta pairing of phi |g|^2 with itself.
quad::QuadratureResult jn_on_support(const RadialProfile& g, Mass s, const quad::QuadratureConfig& cfg);

// J term as a direct integral over (|y1|, |y2|, cos) using the on-support identity.
quad::QuadratureResult jn_direct(const RadialProfile& g, Mass s, const quad::QuadratureConfig& cfg);

}  // namespace kgsharp
