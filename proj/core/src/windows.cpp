#include "hsfrac/windows.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hsfrac/error.hpp"
#include "hsfrac/numeric.hpp"
#include "hsfrac/quadform.hpp"

namespace hsfrac {

bool Window::contains(int n, const Point& x) const {
  if (x[0] < x1_lo || x[0] >= x1_hi) return false;
  double r2 = 0.0;
  for (int a = 1; a < n; ++a) r2 += (x[a] - center[a]) * (x[a] - center[a]);
  return n == 1 || r2 < radius * radius;
}

std::vector<Window> default_windows(const Grid& grid) {
  const double lo = grid.lo(0);
  const double L1 = grid.hi(0) - grid.lo(0);
  std::vector<double> starts;
  for (int k = 0; k <= 6; ++k) starts.push_back(lo + k * L1 / 8.0);
  std::vector<std::array<double, 2>> centers{{0.0, 0.0}};
  double radius = 0.0;
  if (grid.n() > 1) {
    const double Lt = 0.5 * (grid.hi(1) - grid.lo(1));
    radius = 0.5 * Lt;
    std::vector<double> c1;
    for (int k = -2; k <= 2; ++k) c1.push_back(k * 0.25 * Lt);
    centers.clear();
    if (grid.n() == 2) {
      for (double c : c1) centers.push_back({c, 0.0});
    } else {
      for (double c : c1) {
        for (double d : c1) centers.push_back({c, d});
      }
    }
  }
  std::vector<Window> out;
  for (double x0 : starts) {
    for (const auto& c : centers) {
      Window w;
      w.x1_lo = x0;
      w.x1_hi = x0 + L1 / 4.0;
      // The last strip is closed at the far face.
      if (w.x1_hi >= grid.hi(0)) w.x1_hi = std::nextafter(grid.hi(0), INFINITY);
      w.center = {0.0, c[0], c[1]};
      w.radius = radius;
      out.push_back(w);
    }
  }
  return out;
}

WindowProfile window_mass_profile(const TrialFunction& u, double p, double b,
                                  std::span<const Window> windows) {
  const Grid& g = u.grid();
  const int n = g.n();
  const std::vector<double> w = norm_weights(g, p, p * b);
  std::vector<double> dens(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) dens[i] = w[i] * std::pow(std::abs(u[i]), p);

  WindowProfile prof;
  prof.windows.assign(windows.begin(), windows.end());
  prof.normalization = ordered_sum(dens);
  prof.masses.assign(windows.size(), 0.0);
  std::vector<CompensatedSum> acc(windows.size());
  CompensatedSum moment;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (dens[i] == 0.0) continue;
    const Point x = g.point(i);
    moment.add(dens[i] * x[0]);
    if (dens[i] > dens[peak]) peak = i;
    for (std::size_t k = 0; k < windows.size(); ++k) {
      if (windows[k].contains(n, x)) acc[k].add(dens[i]);
    }
  }
  for (std::size_t k = 0; k < windows.size(); ++k) prof.masses[k] = acc[k].value();
  if (!(prof.normalization > 0.0)) return prof;

  const auto best = std::max_element(prof.masses.begin(), prof.masses.end());
  if (best != prof.masses.end()) {
    prof.dominant_window = static_cast<std::size_t>(best - prof.masses.begin());
    prof.dominance = *best / prof.normalization;
  }
  prof.centroid_x1 = moment.value() / prof.normalization;
  prof.peak = g.point(peak);

  std::vector<std::pair<double, double>> radial;
  radial.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (dens[i] == 0.0) continue;
    const Point x = g.point(i);
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += (x[a] - prof.peak[a]) * (x[a] - prof.peak[a]);
    radial.emplace_back(std::sqrt(r2), dens[i]);
  }
  std::sort(radial.begin(), radial.end());
  CompensatedSum cum;
  double r50 = radial.back().first;
  for (const auto& [r, d] : radial) {
    cum.add(d);
    if (cum.value() >= 0.5 * prof.normalization) {
      r50 = r;
      break;
    }
  }
  prof.half_mass_radius = r50 + 0.5 * g.h();
  return prof;
}

WindowProfile window_mass_profile(const TrialFunction& u, double p, double b) {
  const std::vector<Window> w = default_windows(u.grid());
  return window_mass_profile(u, p, b, w);
}

std::string to_string(RunClass c) {
  switch (c) {
    case RunClass::converged:
      return "converged";
    case RunClass::concentrating:
      return "concentrating";
    case RunClass::translating_x1:
      return "translating_x1";
    case RunClass::vanishing:
      return "vanishing";
  }
  return "unknown";
}

RunClass classify_profiles(std::span<const WindowProfile> profiles,
                           std::span<const double> box_lengths, const ClassifyThresholds& th) {
  if (profiles.size() < 2 || box_lengths.size() != profiles.size()) {
    throw DomainError("classification needs at least two profiles with box lengths");
  }
  const WindowProfile& first = profiles.front();
  const WindowProfile& last = profiles.back();
  if (last.half_mass_radius <= first.half_mass_radius / th.shrink_factor) {
    return RunClass::concentrating;
  }
  if (std::abs(last.centroid_x1 - first.centroid_x1) >= th.drift_fraction * box_lengths.back()) {
    return RunClass::translating_x1;
  }
  if (last.dominance < th.dominance && last.dominance < first.dominance) {
    return RunClass::vanishing;
  }
  return RunClass::converged;
}

}  // namespace hsfrac
