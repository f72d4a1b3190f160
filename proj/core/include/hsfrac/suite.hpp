#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsfrac/grid.hpp"
#include "hsfrac/trial_function.hpp"

namespace hsfrac {

struct SuiteMember {
  std::string label;
  TrialFunction u;
};

// Deterministic family of smooth, compactly supported fields built from
// bumps, Gaussian-windowed bumps and modulated bumps. Every support lies in
// x_1 >= wall_gap (half-space grids) and strictly inside the box.
std::vector<SuiteMember> smooth_suite(const Grid& grid, std::uint64_t seed, int count = 12,
                                      double wall_gap = 0.0);

// x_1^{s-1/2+delta} (1-(x_1/R)^2)_+^3 times a transverse bump of radius R;
// its Hardy quotient decreases toward H_s as delta -> 0.
TrialFunction wall_power_family(const Grid& grid, double s, double delta, double R);

}  // namespace hsfrac
