#include "kgsharp/library.hpp"

#include <cmath>

namespace kgsharp {

std::vector<RadialProfile> profile_library() {
  std::vector<RadialProfile> lib;
  lib.push_back({[](double r) { return std::exp(-r); }, 1.0, "exp(-r)"});
  lib.push_back({[](double r) { return std::exp(-2.0 * r * r); }, 0.5, "exp(-2r^2)"});
  lib.push_back({[](double r) {
                   const double p = std::sqrt(1.0 + r * r);
                   return std::exp(-p) / p;
                 },
                 1.0, "exp(-phi_1)/phi_1"});
  lib.push_back({[](double r) { return (1.0 - r * r) * (1.0 - r * r); }, 1.0, "(1-r^2)^2 on [0,1]", 1.0});
  lib.push_back({[](double r) {
                   if (r <= 1.0) return 0.0;
                   const double t = (r - 1.0) * (2.0 - r);
                   return t * t;
                 },
                 1.0, "annulus bump on [1,2]", 2.0});
  lib.push_back({[](double r) { return std::pow(1.0 + r * r, -4.0); }, 4.0, "(1+r^2)^-4"});
  lib.push_back({[](double r) { return r * std::exp(-r); }, 1.0, "r exp(-r)"});
  lib.push_back({[](double r) { return std::exp(-r); }, 1.0, "exp(-r) on [0,3]", 3.0});
  lib.push_back({[](double r) { return (1.0 + std::cos(3.0 * r)) * std::exp(-r); }, 1.0, "(1+cos 3r) exp(-r)"});
  lib.push_back({[](double r) { return std::exp(-4.0 * r * r) + 0.5 * std::exp(-4.0 * (r - 2.0) * (r - 2.0)); }, 0.5,
                 "two bumps"});
  return lib;
}

}  // namespace kgsharp
