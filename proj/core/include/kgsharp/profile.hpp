#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>

namespace kgsharp {

// Fourier-side radial profile r -> g^(r) on [0, inf). Values are real; the
// quantities computed from profiles depend only on moduli and real phases.
struct RadialProfile {
  std::function<double(double)> eval;
  double decay_scale = 1.0;  // length scale used when truncating tails
  std::string label;
  double support_max = std::numeric_limits<double>::infinity();

  double operator()(double r) const { return r > support_max ? 0.0 : eval(r); }
  [[nodiscard]] bool compact() const { return support_max < std::numeric_limits<double>::infinity(); }

  [[nodiscard]] RadialProfile scaled(double factor) const {
    RadialProfile p = *this;
    p.eval = [f = eval, factor](double r) { return factor * f(r); };
    return p;
  }
};

inline RadialProfile zero_profile() {
  return RadialProfile{[](double) { return 0.0; }, 1.0, "zero", 0.0};
}

}  // namespace kgsharp
