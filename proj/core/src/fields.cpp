#include "hsfrac/fields.hpp"

#include <cmath>

#include "hsfrac/error.hpp"

namespace hsfrac {
namespace {

double norm2(int n, const Point& y) {
  double r2 = 0.0;
  for (int a = 0; a < n; ++a) r2 += y[a] * y[a];
  return r2;
}

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace

double bubble_value(int n, double s, const Point& y) {
  return std::pow(1.0 + norm2(n, y), 0.5 * (2.0 * s - n));
}

double smooth_bump(int n, const Point& y) {
  const double r2 = norm2(n, y);
  if (r2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r2));
}

double box_cutoff(const Grid& grid, const Point& x) {
  double c = 1.0;
  for (int a = 0; a < grid.n(); ++a) {
    const double ramp = 0.1 * (grid.hi(a) - grid.lo(a));
    const double d = std::min(x[a] - grid.lo(a), grid.hi(a) - x[a]);
    c *= smoothstep5(d / ramp);
  }
  return c;
}

TrialFunction raw_bubble(const Grid& grid, const Point& center, double scale, double s) {
  if (!(scale > 0.0)) throw DomainError("bubble scale must be positive");
  if (!grid.strictly_inside(center)) throw DomainError("bubble center outside the box");
  const int n = grid.n();
  return TrialFunction::sample(grid, [&](const Point& x) {
    Point y{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) y[a] = (x[a] - center[a]) / scale;
    return bubble_value(n, s, y);
  });
}

TrialFunction bubble(const Grid& grid, const Point& center, double scale, double s) {
  const TrialFunction raw = raw_bubble(grid, center, scale, s);
  return raw.times(TrialFunction::sample(grid, [&](const Point& x) { return box_cutoff(grid, x); }));
}

TrialFunction translated_cutoff_family(const Grid& grid, const Profile& profile, double scale) {
  if (!(scale >= 1.0)) throw DomainError("cutoff family needs scale >= 1");
  const double r = 1.0 / scale;
  for (int a = 0; a < grid.n(); ++a) {
    const double c = a == 0 ? 1.0 : 0.0;
    if (c - r < grid.lo(a) || c + r > grid.hi(a)) {
      throw DomainError("cutoff family support escapes the box");
    }
  }
  const int n = grid.n();
  return TrialFunction::sample(grid, [&](const Point& x) {
    Point y{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) y[a] = scale * (x[a] - (a == 0 ? 1.0 : 0.0));
    return profile(y);
  });
}

TrialFunction dilate(const TrialFunction& u, int beta) {
  if (beta < 1) throw DomainError("dilation factor must be a positive integer");
  const Grid& g = u.grid();
  Index3 m = g.extents();
  for (int a = 0; a < g.n(); ++a) {
    if ((m[a] - 1) % beta != 0) throw DomainError("dilation factor does not divide the grid");
    m[a] = (m[a] - 1) / beta + 1;
  }
  const Grid small(g.n(), g.h(), m, g.domain());
  std::vector<double> v(small.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Index3 k = small.multi(i);
    for (int a = 0; a < g.n(); ++a) k[a] *= beta;
    v[i] = u[g.index(k)];
  }
  return TrialFunction(small, std::move(v));
}

TrialFunction undilate(const TrialFunction& v, int beta, const Grid& target) {
  const Grid& g = v.grid();
  if (beta < 1 || target.n() != g.n() || target.h() != g.h() || target.domain() != g.domain()) {
    throw DomainError("undilate target is incompatible");
  }
  for (int a = 0; a < g.n(); ++a) {
    if ((target.m(a) - 1) != beta * (g.m(a) - 1)) throw DomainError("undilate extents mismatch");
  }
  const int n = g.n();
  std::vector<double> out(target.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Index3 k = target.multi(i);
    Index3 base{0, 0, 0};
    std::array<double, 3> frac{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) {
      base[a] = k[a] / beta;
      frac[a] = static_cast<double>(k[a] % beta) / beta;
    }
    double acc = 0.0;
    for (int corner = 0; corner < (1 << n); ++corner) {
      double w = 1.0;
      Index3 c = base;
      for (int a = 0; a < n; ++a) {
        const bool up = (corner >> a) & 1;
        if (up) {
          w *= frac[a];
          c[a] += 1;
        } else {
          w *= 1.0 - frac[a];
        }
      }
      if (w != 0.0) acc += w * v[g.index(c)];
    }
    out[i] = acc;
  }
  return TrialFunction(target, std::move(out));
}

TrialFunction translate_transverse(const TrialFunction& u, int axis, int cells) {
  const Grid& g = u.grid();
  if (axis < 1 || axis >= g.n()) throw DomainError("translation axis must be transverse");
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (u[i] == 0.0) continue;
    Index3 k = g.multi(i);
    k[axis] += cells;
    if (k[axis] <= 0 || k[axis] >= g.m(axis) - 1) {
      throw DomainError("translation pushes support onto the boundary");
    }
    out[g.index(k)] = u[i];
  }
  return TrialFunction(g, std::move(out));
}

}  // namespace hsfrac
