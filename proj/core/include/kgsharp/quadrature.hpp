#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature with bisection, declared endpoint
// power singularities, exponential-tail truncation and nested integrals.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kgsharp::quad {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 4000;
  // Relative to the running peak of |f|; used to cut semi-infinite ranges.
  double truncation_threshold = 1e-16;

  void validate() const;
  // Budget handed to the inner level of a nested integral (50/50 split).
  [[nodiscard]] QuadratureConfig inner() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = true;

  QuadratureResult& operator+=(const QuadratureResult& other);
  [[nodiscard]] QuadratureResult scaled(double factor) const;
};

// Thrown when the integrand returns NaN or an infinity.
class NonFiniteIntegrand : public std::runtime_error {
 public:
  explicit NonFiniteIntegrand(double abscissa);
  [[nodiscard]] double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

// Power-law behaviour (x - a)^alpha / (b - x)^alpha at the endpoints. When an
// exponent is declared the endpoint panel is integrated in a substituted
// variable x = a + L u^p that removes the singular factor.
struct EndpointBehavior {
  std::optional<double> left_exponent;
  std::optional<double> right_exponent;
  int initial_panels = 1;
  std::vector<double> breakpoints;  // interior points where f may kink
};

struct SemiInfiniteOptions {
  double scale = 1.0;  // characteristic decay length, used to march outward
  std::optional<double> left_exponent;
  int initial_panels = 1;
};

using Integrand = std::function<double(double)>;

// Value together with the error estimate of an inner integral. Used by the
// nested drivers so inner errors propagate into the outer estimate.
struct Sample {
  double value = 0.0;
  double error = 0.0;
};
using NestedIntegrand = std::function<Sample(double)>;

QuadratureResult integrate_1d(const Integrand& f, double a, double b,
                              const QuadratureConfig& cfg,
                              const EndpointBehavior& ends = {});

QuadratureResult integrate_semi_infinite(const Integrand& f, double a,
                                         const QuadratureConfig& cfg,
                                         const SemiInfiniteOptions& opts = {});

// Outer error = own estimate + integral of the inner error estimates.
QuadratureResult integrate_1d_nested(const NestedIntegrand& f, double a, double b,
                                     const QuadratureConfig& cfg,
                                     const EndpointBehavior& ends = {});

QuadratureResult integrate_semi_infinite_nested(const NestedIntegrand& f, double a,
                                                const QuadratureConfig& cfg,
                                                const SemiInfiniteOptions& opts = {});

// One axis of an iterated integral. Bounds may depend on the values of the
// enclosing (outer) variables; an infinite upper bound selects the
// semi-infinite driver for that axis.
struct AxisBounds {
  std::function<std::pair<double, double>(std::span<const double> outer)> bounds;
  EndpointBehavior ends{};
  double scale = 1.0;
};

// f receives the variables ordered outermost first. Dimension must be 2 or 3.
QuadratureResult integrate_iterated(const std::function<double(std::span<const double>)>& f,
                                    std::span<const AxisBounds> axes,
                                    const QuadratureConfig& cfg);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace kgsharp::quad
