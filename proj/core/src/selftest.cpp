#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "hsfrac/constants.hpp"
#include "hsfrac/experiments.hpp"
#include "hsfrac/fields.hpp"
#include "hsfrac/lattice.hpp"
#include "hsfrac/optimizer.hpp"
#include "hsfrac/quadform.hpp"
#include "hsfrac/suite.hpp"

namespace hsfrac {
namespace {

struct Check {
  std::string name;
  std::function<bool(std::string&)> run;
};

bool near(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

TrialFunction gaussian(const Grid& g, double c, double w) {
  return TrialFunction::sample(g, [&](const Point& x) {
    double r2 = (x[0] - c) * (x[0] - c);
    for (int a = 1; a < g.n(); ++a) r2 += x[a] * x[a];
    return std::exp(-r2 / (w * w));
  });
}

std::vector<Check> checks() {
  std::vector<Check> out;
  out.push_back({"hardy constant at s=1/2 is 1/pi", [](std::string& d) {
                   const double v = hardy_constant(0.5);
                   d = std::to_string(v);
                   return near(v, 1.0 / std::numbers::pi, 1e-14);
                 }});
  out.push_back({"critical exponent n=1 s=0.25 is 4", [](std::string& d) {
                   const Exponents e = derive_exponents(1, 0.25, 4.0);
                   d = std::to_string(e.two_star) + " b=" + std::to_string(e.b);
                   return near(e.two_star, 4.0, 1e-14) && e.b == 0.0;
                 }});
  out.push_back({"Epstein zeta reduces to 2 zeta in 1D", [](std::string& d) {
                   const double v = lattice::epstein_zeta(1, 2.0);
                   d = std::to_string(v);
                   return near(v, std::numbers::pi * std::numbers::pi / 3.0, 1e-12);
                 }});
  out.push_back({"Fourier form at s=0 equals the l2 norm", [](std::string& d) {
                   const Grid g = Grid::half_space(1, 16.0, 257, 257);
                   const TrialFunction u = gaussian(g, 8.0, 1.5);
                   const double f = fourier_form(u, 0.0);
                   double l2 = 0.0;
                   for (double x : u.values()) l2 += x * x * g.h();
                   d = std::to_string(f) + " vs " + std::to_string(l2);
                   return near(f, l2, 1e-12);
                 }});
  out.push_back({"Fourier and Gagliardo forms agree", [](std::string& d) {
                   const Grid g = Grid::half_space(1, 64.0, 4097, 4097);
                   const TrialFunction u = gaussian(g, 10.0, 2.0);
                   const double f = fourier_form(u, 0.4);
                   const double q = gagliardo_form(u, 1, 0.4);
                   d = "rel diff " + std::to_string(std::abs(f - q) / f);
                   return std::abs(f - q) <= 1e-3 * f;
                 }});
  out.push_back({"bilinear form is symmetric", [](std::string& d) {
                   const Grid g = Grid::half_space(2, 8.0, 33, 33);
                   const auto suite = smooth_suite(g, 7, 2);
                   const double a = bilinear_form(suite[0].u, suite[1].u, 2, 0.45);
                   const double b = bilinear_form(suite[1].u, suite[0].u, 2, 0.45);
                   d = std::to_string(a - b);
                   return a == b;
                 }});
  out.push_back({"quotient is scale invariant", [](std::string& d) {
                   const Grid g = Grid::half_space(1, 16.0, 513, 513);
                   const TrialFunction u = gaussian(g, 6.0, 1.0);
                   const QuotientSpec sp = QuotientSpec::from(Params::make(1, 0.4, 3.0, 0.0));
                   const double a = rayleigh_quotient(u, sp);
                   const double b = rayleigh_quotient(u.scaled(-3.5), sp);
                   d = std::to_string(a) + " vs " + std::to_string(b);
                   return near(a, b, 1e-12);
                 }});
  out.push_back({"Hardy form positive below H_s", [](std::string& d) {
                   const Grid g = Grid::half_space(1, 64.0, 4097, 4097);
                   const TrialFunction u = wall_power_family(g, 0.4, 0.2, 16.0);
                   const double e = fourier_form(u, 0.4) - hardy_constant(0.4) * hardy_term(u, 0.4);
                   d = std::to_string(e);
                   return e > 0.0;
                 }});
  return out;
}

}  // namespace

bool run_selftest(std::ostream& os) {
  bool ok = true;
  for (const Check& c : checks()) {
    std::string detail;
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("threw: ") + e.what();
    }
    os << (pass ? "PASS " : "FAIL ") << c.name << " (" << detail << ")\n";
    ok = ok && pass;
  }
  return ok;
}

}  // namespace hsfrac
