#pragma once

// Fixed test profiles: exponential and Gaussian decay, compact bumps,
// power-law tails and oscillating envelopes.

#include <vector>

#include "kgsharp/profile.hpp"

namespace kgsharp {

std::vector<RadialProfile> profile_library();

}  // namespace kgsharp
