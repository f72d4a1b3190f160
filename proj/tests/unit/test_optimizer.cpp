#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hsfrac/constants.hpp"
#include "hsfrac/error.hpp"
#include "hsfrac/fields.hpp"
#include "hsfrac/optimizer.hpp"
#include "hsfrac/quadform.hpp"
#include "hsfrac/suite.hpp"
#include "hsfrac/windows.hpp"

using namespace hsfrac;

namespace {

TrialFunction bump_at(const Grid& g, double c, double r) {
  return TrialFunction::sample(g, [&](const Point& x) {
    Point y{(x[0] - c) / r, x[1] / r, x[2] / r};
    return smooth_bump(g.n(), y);
  });
}

}  // namespace

TEST(Quotient, MatchesItsParts) {
  const Grid g = Grid::half_space(1, 16.0, 257, 257);
  const TrialFunction u = bump_at(g, 4.0, 2.0);
  const Params p = Params::make(1, 0.4, 3.0, 0.4 * hardy_constant(0.4));
  const double num = fourier_form(u, 0.4, {2}) - p.lambda() * hardy_term(u, 0.4);
  const double den = std::pow(weighted_norm(u, 3.0, p.b()), 2.0);
  EXPECT_NEAR(rayleigh_quotient(u, p, 2), num / den, 1e-12 * num / den);
  EXPECT_THROW(rayleigh_quotient(TrialFunction::zero(g), p), DomainError);
}

TEST(Quotient, GradientIsOrthogonalToField) {
  // Degree-zero homogeneity: <grad Q(u), u> = 0.
  const Grid g = Grid::half_space(2, 8.0, 33, 33);
  const TrialFunction u = smooth_suite(g, 3, 1)[0].u;
  const Params p = Params::critical(2, 0.45, 0.5 * hardy_constant(0.45));
  const auto grad = quotient_gradient(u, p, 2);
  double ip = 0.0;
  double gn = 0.0;
  double un = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    ip += grad[i] * u[i];
    gn += grad[i] * grad[i];
    un += u[i] * u[i];
  }
  EXPECT_LT(std::abs(ip), 1e-10 * std::sqrt(gn * un));
}

TEST(Quotient, GradientMatchesCentralDifferences) {
  const Grid g = Grid::half_space(1, 8.0, 129, 129);
  const TrialFunction u = bump_at(g, 3.0, 2.0);
  const Params p = Params::make(1, 0.3, 3.0, -2.0);
  QuotientFunctional f(g, QuotientSpec::from(p), 2);
  const auto grad = f.gradient(u.values());
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 5; ++k) {
    std::vector<double> d(g.size(), 0.0);
    for (std::size_t i = 1; i + 1 < g.size(); ++i) d[i] = normal(rng);
    const double eps = 1e-5;
    std::vector<double> up(u.values().begin(), u.values().end());
    std::vector<double> um = up;
    for (std::size_t i = 0; i < g.size(); ++i) {
      up[i] += eps * d[i];
      um[i] -= eps * d[i];
    }
    const double fd = (f.value(up) - f.value(um)) / (2.0 * eps);
    double an = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) an += grad[i] * d[i];
    EXPECT_NEAR(fd, an, 1e-6 * std::abs(an)) << k;
  }
}

TEST(Quotient, WholeSpaceRestrictions) {
  const Grid g = Grid::whole_space(1, 16.0, 257);
  EXPECT_THROW(QuotientFunctional(g, {1, 0.3, 5.0, 0.0, 0.1}), DomainError);
  EXPECT_THROW(QuotientFunctional(g, {1, 0.3, 3.0, 0.2, 0.0}), DomainError);
  EXPECT_NO_THROW(QuotientFunctional(g, {1, 0.3, 5.0, 0.0, 0.0}));
}

TEST(Minimizer, DescendsAndNormalizes) {
  const Grid g = Grid::half_space(1, 16.0, 257, 257);
  const Params p = Params::make(1, 0.4, 3.0, 0.0);
  const MinimizerReport r = minimize_quotient(p, default_initial_field(g, 0.4));
  ASSERT_GE(r.quotient_trace.size(), 2u);
  for (std::size_t i = 1; i < r.quotient_trace.size(); ++i) {
    EXPECT_LE(r.quotient_trace[i], r.quotient_trace[i - 1] * (1.0 + 1e-14));
  }
  EXPECT_EQ(r.termination, Termination::tolerance);
  EXPECT_DOUBLE_EQ(r.best_quotient, r.quotient_trace.back());
  EXPECT_NEAR(weighted_norm(r.final_field, 3.0, p.b()), 1.0, 1e-12);
  EXPECT_LT(r.euler_lagrange_residual, 1e-2);
  EXPECT_NEAR(rayleigh_quotient(r.final_field, p, r.options.padding), r.best_quotient,
              1e-10 * r.best_quotient);
}

TEST(Minimizer, DeterministicRerun) {
  const Grid g = Grid::half_space(1, 16.0, 129, 129);
  const Params p = Params::make(1, 0.35, 3.0, 0.2);
  OptimizerOptions o;
  o.max_iters = 50;
  const MinimizerReport a = minimize_quotient(p, default_initial_field(g, 0.35), o);
  const MinimizerReport b = minimize_quotient(p, default_initial_field(g, 0.35), o);
  ASSERT_EQ(a.quotient_trace, b.quotient_trace);
  for (std::size_t i = 0; i < g.size(); ++i) ASSERT_EQ(a.final_field[i], b.final_field[i]);
  std::stringstream ta;
  std::stringstream tb;
  write_trace_csv(ta, a);
  write_trace_csv(tb, b);
  EXPECT_EQ(ta.str(), tb.str());
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(Minimizer, IterationCap) {
  const Grid g = Grid::half_space(1, 16.0, 129, 129);
  OptimizerOptions o;
  o.max_iters = 3;
  const MinimizerReport r =
      minimize_quotient(Params::make(1, 0.4, 3.0, 0.0), default_initial_field(g, 0.4), o);
  EXPECT_EQ(r.termination, Termination::max_iters);
  EXPECT_EQ(r.iterations, 3);
}

TEST(Windows, DefaultCoverAndMass) {
  const Grid g = Grid::half_space(2, 16.0, 65, 65);
  const auto w = default_windows(g);
  EXPECT_EQ(w.size(), 7u * 5u);
  const TrialFunction u = bump_at(g, 5.0, 1.0);
  const WindowProfile pr = window_mass_profile(u, 3.0, 0.0);
  EXPECT_GT(pr.dominance, 0.99);
  EXPECT_NEAR(pr.peak[0], 5.0, 1e-12);
  EXPECT_NEAR(pr.centroid_x1, 5.0, 0.05);
  EXPECT_GT(pr.half_mass_radius, 0.0);
  EXPECT_LT(pr.half_mass_radius, 1.0);
}

TEST(Windows, ClassifierBranches) {
  WindowProfile a;
  a.dominance = 0.95;
  a.half_mass_radius = 1.0;
  a.centroid_x1 = 4.0;
  const std::vector<double> L{16.0, 16.0};

  WindowProfile same = a;
  EXPECT_EQ(classify_profiles(std::vector<WindowProfile>{a, same}, L), RunClass::converged);

  WindowProfile shrunk = a;
  shrunk.half_mass_radius = 0.4;
  EXPECT_EQ(classify_profiles(std::vector<WindowProfile>{a, shrunk}, L), RunClass::concentrating);

  WindowProfile moved = a;
  moved.centroid_x1 = 9.0;
  EXPECT_EQ(classify_profiles(std::vector<WindowProfile>{a, moved}, L), RunClass::translating_x1);

  WindowProfile spread = a;
  spread.dominance = 0.6;
  EXPECT_EQ(classify_profiles(std::vector<WindowProfile>{a, spread}, L), RunClass::vanishing);
}

TEST(Windows, ClassifyRunRejectsMixedReports) {
  const Grid g = Grid::half_space(1, 16.0, 129, 129);
  OptimizerOptions o;
  o.max_iters = 2;
  const auto a = minimize_quotient(Params::make(1, 0.4, 3.0, 0.0), default_initial_field(g, 0.4), o);
  const auto b = minimize_quotient(Params::make(1, 0.4, 3.0, 0.1), default_initial_field(g, 0.4), o);
  EXPECT_THROW(classify_run(std::vector<MinimizerReport>{a, b}), DomainError);
  EXPECT_THROW(classify_run(std::vector<MinimizerReport>{a}), DomainError);
}

// Sharp constant of ||u||_{2*}^2 <= S^{-1} int |xi|^{2s} |F u|^2, attained
// by the bubble.
double sharp_sobolev(int n, double s) {
  return std::pow(2.0, 2.0 * s) * std::pow(std::numbers::pi, s) * std::tgamma(0.5 * (n + 2.0 * s)) /
         std::tgamma(0.5 * (n - 2.0 * s)) *
         std::pow(std::tgamma(0.5 * n) / std::tgamma(double(n)), 2.0 * s / n);
}

TEST(Sobolev, EstimateBracketsSharpConstant) {
  for (const auto& [n, s] : {std::pair{1, 0.4}, std::pair{2, 0.45}, std::pair{3, 0.5}}) {
    const double exact = sharp_sobolev(n, s);
    const Estimate e = sobolev_estimate(n, s);
    EXPECT_GT(e.uncertainty, 0.0);
    EXPECT_LT(e.uncertainty, 1e-3 * exact);
    EXPECT_NEAR(e.value, exact, 3.0 * e.uncertainty) << n << " " << s;
  }
}
