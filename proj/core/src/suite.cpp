#include "hsfrac/suite.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hsfrac/error.hpp"
#include "hsfrac/fields.hpp"

namespace hsfrac {
namespace {

// Portable uniform on [0,1): the top 53 bits of a mt19937_64 draw.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double operator()(double a, double b) { return a + (b - a) * (*this)(); }

 private:
  std::mt19937_64 rng_;
};

struct Component {
  int kind;
  Point center;
  double radius;
  double width;
  double freq;
  double amp;
};

double eval(int n, const Component& c, const Point& x) {
  Point y{0.0, 0.0, 0.0};
  double r2 = 0.0;
  for (int a = 0; a < n; ++a) {
    y[a] = (x[a] - c.center[a]) / c.radius;
    r2 += (x[a] - c.center[a]) * (x[a] - c.center[a]);
  }
  const double b = smooth_bump(n, y);
  if (b == 0.0) return 0.0;
  switch (c.kind) {
    case 0:
      return c.amp * b;
    case 1:
      return c.amp * b * std::exp(-r2 / (c.width * c.width));
    default:
      return c.amp * b * std::cos(c.freq * (x[0] - c.center[0]));
  }
}

}  // namespace

std::vector<SuiteMember> smooth_suite(const Grid& grid, std::uint64_t seed, int count,
                                      double wall_gap) {
  if (count < 1) throw DomainError("suite size must be positive");
  const int n = grid.n();
  const bool half = grid.domain() == Domain::half_space;
  double span = grid.hi(0) - grid.lo(0);
  for (int a = 1; a < n; ++a) span = std::min(span, grid.hi(a) - grid.lo(a));
  // Radii depend on the box only, so refined grids sample the same fields.
  const double rmin = 0.04 * span;
  const double rmax = std::max(rmin, 0.15 * span);
  Uniform uni(seed);
  std::vector<SuiteMember> out;
  out.reserve(static_cast<std::size_t>(count));
  static const char* kinds[] = {"bump", "gauss", "wave"};
  for (int k = 0; k < count; ++k) {
    const int ncomp = 1 + k % 3;
    std::vector<Component> comps;
    std::string label;
    for (int j = 0; j < ncomp; ++j) {
      Component c{};
      c.kind = (k + j) % 3;
      c.radius = uni(rmin, rmax);
      c.width = c.radius * uni(0.3, 0.6);
      c.freq = uni(1.0, 3.0) * std::numbers::pi / c.radius;
      c.amp = uni(0.5, 1.5) * (j % 2 == 0 ? 1.0 : -0.5);
      for (int a = 0; a < n; ++a) {
        double lo = grid.lo(a) + c.radius + 0.01 * span;
        const double hi = grid.hi(a) - c.radius - 0.01 * span;
        if (a == 0 && half) lo = std::max(lo, wall_gap + c.radius);
        if (lo > hi) throw DomainError("box too small for the requested suite");
        // Keep components in the inner part of the admissible range.
        const double mid = 0.5 * (lo + hi);
        const double half_range = 0.5 * (hi - lo);
        c.center[a] = a == 0 && half ? uni(lo, lo + 0.5 * (hi - lo))
                                     : uni(mid - 0.6 * half_range, mid + 0.6 * half_range);
      }
      comps.push_back(c);
      label += (j ? "+" : "") + std::string(kinds[c.kind]);
    }
    TrialFunction u = TrialFunction::sample(grid, [&](const Point& x) {
      double v = 0.0;
      for (const Component& c : comps) v += eval(n, c, x);
      return v;
    });
    out.push_back({"suite" + std::to_string(k) + ":" + label, std::move(u)});
  }
  return out;
}

TrialFunction wall_power_family(const Grid& grid, double s, double delta, double R) {
  if (grid.domain() != Domain::half_space) throw DomainError("wall family needs a half-space grid");
  if (!(delta > 0.0) || !(R > 0.0)) throw DomainError("wall family needs delta > 0, R > 0");
  if (R >= grid.hi(0)) throw DomainError("wall family radius exceeds the box");
  for (int a = 1; a < grid.n(); ++a) {
    if (R >= grid.hi(a)) throw DomainError("wall family radius exceeds the box");
  }
  const int n = grid.n();
  const double e = s - 0.5 + delta;
  return TrialFunction::sample(grid, [&](const Point& x) {
    if (x[0] <= 0.0 || x[0] >= R) return 0.0;
    const double t = x[0] / R;
    const double w = 1.0 - t * t;
    Point y{0.0, 0.0, 0.0};
    for (int a = 1; a < n; ++a) y[a - 1] = x[a] / R;
    const double trans = n > 1 ? smooth_bump(n - 1, y) : 1.0;
    return std::pow(x[0], e) * w * w * w * trans;
  });
}

}  // namespace hsfrac
