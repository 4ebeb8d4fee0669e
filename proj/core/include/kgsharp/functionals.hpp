#pragma once

// Norms and both sides of the bilinear estimate for radial Fourier profiles
// in d >= 2, Strichartz quotients and the one-sided splitting of full
// Klein-Gordon solutions.
//
// Conventions: f^(xi) = int f(x) e^{-i x xi} dx. Physical L^2 norms carry the
// Plancherel factor (2pi)^{-d}; the Sobolev norm H^m is Fourier-side with no
// 2pi factor.

#include <string_view>
#include <utility>

#include "kgsharp/dimension_one.hpp"
#include "kgsharp/hyperboloid.hpp"
#include "kgsharp/kernel.hpp"
#include "kgsharp/profile.hpp"
#include "kgsharp/quadrature.hpp"

namespace kgsharp {

// int_0^inf g(r) r^{d-1} dr over the support of f, truncated at the decay scale of f.
quad::QuadratureResult radial_integral(Dimension d, const RadialProfile& f, const quad::Integrand& g,
                                       const quad::QuadratureConfig& cfg);

// ||phi_s^beta f||_{L^2(R^d)} in physical space.
double l2_physical(Dimension d, Mass s, const RadialProfile& f, double beta, const quad::QuadratureConfig& cfg);

// (|S^{d-1}| int (1 + r^2)^m |f^(r)|^2 r^{d-1} dr)^{1/2}.
double hm_norm(const RadialProfile& f, Dimension d, double m, const quad::QuadratureConfig& cfg);

struct NormSResult {
  double phi_norm4 = 0.0;   // ||phi_s f||^4
  double half_norm4 = 0.0;  // s^2 ||phi_s^{1/2} f||^4
  double value4 = 0.0;      // ||f||_(s)^4
};

NormSResult norm_s(const RadialProfile& f, Dimension d, Mass s, const quad::QuadratureConfig& cfg);

quad::QuadratureResult bilinear_rhs(Dimension d, Mass s, const RadialProfile& f1, const RadialProfile& f2,
                                    const quad::QuadratureConfig& cfg);

// ||e^{i eps1 t phi} f1 e^{i eps2 t phi} f2||^2_{L^2(R^{1+d})} through the delta pairing.
quad::QuadratureResult bilinear_lhs(Dimension d, Mass s, const RadialProfile& f1, const RadialProfile& f2,
                                    SheetSigns signs, const quad::QuadratureConfig& cfg);

// int int |f|^2 |f|^2 phi phi' y1.y2 dy1 dy2 for a radial profile.
double carneiro_term(Dimension d, Mass s, const RadialProfile& f, const quad::QuadratureConfig& cfg);

// int int g(x) conj(g(y)) x y dx dy = |int x g(x) dx|^2 on the line.
double carneiro_line(const LineProfile& g, const quad::QuadratureConfig& cfg);

enum class QuotientFlavor { NormS, HHalf, HOne };

QuotientFlavor parse_flavor(std::string_view name);
std::string_view flavor_name(QuotientFlavor flavor);

// Best constant of the quotient under the conventions above.
double flavor_sharp_constant(Dimension d, QuotientFlavor flavor);

struct QuotientResult {
  double value = 0.0;
  double numerator = 0.0;    // ||e^{it phi} f||^4_{L^4}
  double denominator = 0.0;  // fourth power of the flavor's norm
  double error_estimate = 0.0;
};

QuotientResult strichartz_quotient(Dimension d, Mass s, const RadialProfile& f, QuotientFlavor flavor,
                                   const quad::QuadratureConfig& cfg);

// Radial Cauchy data of a d = 5, s = 1 solution. u1 holds the real profile v
// with (d_t u(0))^ = i v.
struct CauchyData {
  RadialProfile u0;
  RadialProfile u1;
};

// f_+ and f_- with u(0) = f_+ + f_- and d_t u(0) = i phi_1 (f_+ - f_-).
std::pair<RadialProfile, RadialProfile> split_cauchy_data(const CauchyData& data);

struct FullSolutionResult {
  double l4_fourth = 0.0;    // ||u||^4_{L^4}
  double plus_plus = 0.0;    // ||u_+^2||^2
  double minus_minus = 0.0;  // ||u_-^2||^2
  double plus_minus = 0.0;   // ||u_+ u_-||^2
  double x = 0.0;            // ||u_+||^2_{L^4}
  double y = 0.0;            // ||u_-||^2_{L^4}
  double error_estimate = 0.0;
};

FullSolutionResult full_solution_l4(const CauchyData& data, const quad::QuadratureConfig& cfg);

struct PolyPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// X^2 + Y^2 + 4XY against (3/2)(X + Y)^2.
PolyPair poly_sharp(double x, double y);

}  // namespace kgsharp
