#pragma once

#include <span>
#include <string>
#include <vector>

#include "hsfrac/grid.hpp"
#include "hsfrac/trial_function.hpp"

namespace hsfrac {

// Slab x_1 in [x1_lo, x1_hi) intersected with the transverse ball
// |x' - center'| < radius (transverse part ignored for n = 1).
struct Window {
  double x1_lo = 0.0;
  double x1_hi = 0.0;
  Point center{0.0, 0.0, 0.0};
  double radius = 0.0;

  bool contains(int n, const Point& x) const;
};

struct WindowProfile {
  std::vector<Window> windows;
  std::vector<double> masses;
  double normalization = 0.0;
  // Largest window mass over normalization.
  double dominance = 0.0;
  std::size_t dominant_window = 0;
  // Node of largest weighted density.
  Point peak{0.0, 0.0, 0.0};
  // Radius around the peak holding half of the mass, plus h/2.
  double half_mass_radius = 0.0;
  double centroid_x1 = 0.0;
};

// Overlapping cover: x_1 strips of width L1/4 at stride L1/8; transverse
// balls of radius L'/2 at stride L'/4, where L' is the transverse half-width.
std::vector<Window> default_windows(const Grid& grid);

// Per-window mass of x_1^{-pb}|u|^p, using the same quadrature as
// weighted_norm.
WindowProfile window_mass_profile(const TrialFunction& u, double p, double b,
                                  std::span<const Window> windows);
WindowProfile window_mass_profile(const TrialFunction& u, double p, double b);

enum class RunClass { converged, concentrating, translating_x1, vanishing };

std::string to_string(RunClass c);

struct ClassifyThresholds {
  double dominance = 0.9;
  double shrink_factor = 2.0;
  double drift_fraction = 0.25;
};

// Heuristic label from the first and last profile of a sequence ordered by
// increasing resolution or box size. Checks, in order: half-mass radius
// shrinking by shrink_factor (concentrating), centroid drift of
// drift_fraction times the box length (translating_x1), dominance falling
// below the threshold (vanishing); otherwise converged.
RunClass classify_profiles(std::span<const WindowProfile> profiles, std::span<const double> box_lengths,
                           const ClassifyThresholds& th = {});

}  // namespace hsfrac
