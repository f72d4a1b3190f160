#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "hsfrac/grid.hpp"
#include "hsfrac/trial_function.hpp"

namespace hsfrac {

// Continuous profile on R^n; components of Point beyond n are zero.
using Profile = std::function<double(const Point&)>;

// (1 + |y|^2)^{(2s-n)/2}.
double bubble_value(int n, double s, const Point& y);

// exp(1 - 1/(1-|y|^2)) on the open unit ball, 0 outside; equals 1 at 0.
double smooth_bump(int n, const Point& y);

// Product over axes of a quintic smoothstep in the distance to the nearer
// face; C^2, equal to 1 on the inner 80% of every axis, 0 on the boundary.
double box_cutoff(const Grid& grid, const Point& x);

// Samples U_s((x-center)/scale) times box_cutoff. center must lie strictly
// inside the box.
TrialFunction bubble(const Grid& grid, const Point& center, double scale, double s);

// Same as bubble without the cutoff factor (boundary nodes still zeroed).
TrialFunction raw_bubble(const Grid& grid, const Point& center, double scale, double s);

// Samples profile(scale * (x - e_1)) where profile is supported in the unit
// ball. Requires scale >= 1 and the ball of radius 1/scale around e_1 to lie
// in the box.
TrialFunction translated_cutoff_family(const Grid& grid, const Profile& profile, double scale);

// x -> u(beta x) on the grid with the same spacing and a box shrunk by beta
// (every beta-th node). Requires (m-1) divisible by beta on every axis.
TrialFunction dilate(const TrialFunction& u, int beta);

// Inverse of dilate onto `target`: shared nodes copy v exactly, the others
// are filled by multilinear interpolation.
TrialFunction undilate(const TrialFunction& v, int beta, const Grid& target);

// Shifts values by `cells` nodes along a transverse axis (1..n-1). Nonzero
// values pushed off the box are rejected.
TrialFunction translate_transverse(const TrialFunction& u, int axis, int cells);

// Field file: header row "n,x1_min,x1_max,xp_min,xp_max,m1,m2,m3", one data
// row, then a "value" header and one value per node in storage order.
void write_field_csv(std::ostream& os, const TrialFunction& u);
TrialFunction read_field_csv(std::istream& is);
void save_field(const std::string& path, const TrialFunction& u);
TrialFunction load_field(const std::string& path);

}  // namespace hsfrac
