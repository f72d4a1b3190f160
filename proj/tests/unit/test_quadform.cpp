#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "hsfrac/constants.hpp"
#include "hsfrac/error.hpp"
#include "hsfrac/fields.hpp"
#include "hsfrac/quadform.hpp"
#include "hsfrac/suite.hpp"

using namespace hsfrac;

namespace {

constexpr double kPi = std::numbers::pi;

TrialFunction gaussian(const Grid& g, double c, double w) {
  return TrialFunction::sample(g, [&](const Point& x) {
    double r2 = (x[0] - c) * (x[0] - c);
    for (int a = 1; a < g.n(); ++a) r2 += x[a] * x[a];
    return std::exp(-r2 / (w * w));
  });
}

// int |xi|^{2s} |F u|^2 for u = exp(-|x|^2/w^2) with the unitary transform:
// |F u|^2 = (w^2/2)^n exp(-w^2 |xi|^2 / 2).
double gaussian_form(int n, double s, double w) {
  const double a = 0.5 * w * w;
  const double sphere = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
  return std::pow(a, n) * sphere * std::tgamma(0.5 * (n + 2.0 * s)) /
         (2.0 * std::pow(a, 0.5 * (n + 2.0 * s)));
}

// Direct O(N^2) evaluation of the lattice Gagliardo form in 1D:
// (C/2) h^{1-2s} [ sum_{i != j in Z} (u_i - u_j)^2 |i-j|^{-1-2s} + c sum (du)^2 ]
// with exterior sums from Riemann zeta minus partial sums.
double brute_gagliardo_1d(const TrialFunction& u, double s) {
  const Grid& g = u.grid();
  const int M = g.m(0);
  const double sig = 1.0 + 2.0 * s;
  const auto tail = [&](int a) {  // sum_{k >= a} k^{-sig}
    double head = 0.0;
    for (int k = 1; k < a; ++k) head += std::pow(k, -sig);
    return std::riemann_zeta(sig) - head;
  };
  long double pair = 0.0L;
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      if (i == j) continue;
      const double d = u[i] - u[j];
      pair += d * d * std::pow(std::abs(i - j), -sig);
    }
    // Exterior nodes j < 0 and j >= M, each pair counted twice.
    pair += 2.0L * u[i] * u[i] * (tail(i + 1) + tail(M - i));
  }
  long double grad = 0.0L;
  for (int i = 0; i < M; ++i) {
    const double l = i > 0 ? u[i - 1] : 0.0;
    const double r = i + 1 < M ? u[i + 1] : 0.0;
    grad += 0.25 * (r - l) * (r - l);
  }
  // Near-diagonal coefficient -Z_1(2s-1) = -2 zeta(2s-1), continued.
  const double moment = -2.0 * std::riemann_zeta(2.0 * s - 1.0);
  return 0.5 * gagliardo_constant(1, s) * std::pow(g.h(), 1.0 - 2.0 * s) *
         static_cast<double>(pair + moment * grad);
}

// Same in 2D with the exterior mass from the frozen Epstein value.
double brute_gagliardo_2d(const TrialFunction& u, double s, double epstein) {
  const Grid& g = u.grid();
  const int M0 = g.m(0);
  const int M1 = g.m(1);
  const double sig = 2.0 + 2.0 * s;
  long double pair = 0.0L;
  for (int a = 0; a < M0; ++a) {
    for (int b = 0; b < M1; ++b) {
      const double ua = u[g.index({a, b, 0})];
      long double inside = 0.0L;
      for (int c = 0; c < M0; ++c) {
        for (int d = 0; d < M1; ++d) {
          if (a == c && b == d) continue;
          const double k = std::pow(double(a - c) * (a - c) + double(b - d) * (b - d), -0.5 * sig);
          const double diff = ua - u[g.index({c, d, 0})];
          pair += diff * diff * k;
          inside += k;
        }
      }
      pair += 2.0L * ua * ua * (epstein - inside);
    }
  }
  long double grad = 0.0L;
  const auto at = [&](int a, int b) {
    return (a < 0 || b < 0 || a >= M0 || b >= M1) ? 0.0 : u[g.index({a, b, 0})];
  };
  for (int a = 0; a < M0; ++a) {
    for (int b = 0; b < M1; ++b) {
      const double dx = 0.5 * (at(a + 1, b) - at(a - 1, b));
      const double dy = 0.5 * (at(a, b + 1) - at(a, b - 1));
      grad += dx * dx + dy * dy;
    }
  }
  const double moment = 3.3514361470026716698;  // -Z_2(0.9), continued
  return 0.5 * gagliardo_constant(2, s) * std::pow(g.h(), 2.0 - 2.0 * s) *
         static_cast<double>(pair + 0.5 * moment * grad);
}

}  // namespace

TEST(FourierForm, GaussianClosedForm1D) {
  const Grid g = Grid::half_space(1, 64.0, 4097, 4097);
  const TrialFunction u = gaussian(g, 10.0, 2.0);
  for (double s : {0.3, 0.5, 0.7}) {
    const double exact = gaussian_form(1, s, 2.0);
    EXPECT_NEAR(fourier_form(u, s), exact, 3e-3 * exact) << s;
  }
}

TEST(FourierForm, GaussianClosedForm2D) {
  const Grid g = Grid::half_space(2, 32.0, 257, 257);
  const TrialFunction u = gaussian(g, 8.0, 2.0);
  for (double s : {0.3, 0.75}) {
    const double exact = gaussian_form(2, s, 2.0);
    EXPECT_NEAR(fourier_form(u, s), exact, 1e-3 * exact) << s;
  }
}

TEST(FourierForm, OperatorMatchesForm) {
  const Grid g = Grid::half_space(2, 8.0, 33, 33);
  const TrialFunction u = smooth_suite(g, 2, 1)[0].u;
  FractionalOperator op(g, 0.6, 2);
  const std::vector<double> au = op.apply(u.values());
  double ip = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) ip += u[i] * au[i];
  ip *= g.cell_volume();
  EXPECT_NEAR(ip, op.form(u.values()), 1e-12 * ip);
  EXPECT_NEAR(op.spectral_form(u.values()), op.form(u.values()), 1e-10 * ip);
}

TEST(FourierForm, OperatorIsSymmetric) {
  const Grid g = Grid::half_space(1, 8.0, 65, 65);
  const auto suite = smooth_suite(g, 4, 2);
  FractionalOperator op(g, 0.35, 4);
  const auto au = op.apply(suite[0].u.values());
  const auto av = op.apply(suite[1].u.values());
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    a += suite[1].u[i] * au[i];
    b += suite[0].u[i] * av[i];
  }
  EXPECT_NEAR(a, b, 1e-12 * std::abs(a) + 1e-15);
}

TEST(FourierForm, ZeroOrderIsParseval) {
  const Grid g = Grid::whole_space(2, 8.0, 33);
  const TrialFunction u = gaussian(g, 0.0, 1.0);
  double l2 = 0.0;
  for (double x : u.values()) l2 += x * x;
  l2 *= g.cell_volume();
  EXPECT_NEAR(fourier_form(u, 0.0), l2, 1e-13 * l2);
}

TEST(FourierForm, ScalesQuadratically) {
  const Grid g = Grid::half_space(1, 16.0, 257, 257);
  const TrialFunction u = gaussian(g, 6.0, 1.0);
  const double f = fourier_form(u, 0.4);
  EXPECT_NEAR(fourier_form(u.scaled(3.0), 0.4), 9.0 * f, 1e-12 * f);
}

TEST(GagliardoForm, BruteForcePairSum1D) {
  const Grid g = Grid::half_space(1, 6.0, 49, 49);
  const auto suite = smooth_suite(g, 9, 3);
  for (const auto& m : suite) {
    for (double s : {0.2, 0.45, 0.8}) {
      const double ref = brute_gagliardo_1d(m.u, s);
      EXPECT_NEAR(gagliardo_form(m.u, 1, s), ref, 1e-11 * ref) << m.label << " s=" << s;
    }
  }
}

TEST(GagliardoForm, BruteForcePairSum2D) {
  const Grid g = Grid::half_space(2, 3.0, 13, 13);
  const TrialFunction u = smooth_suite(g, 5, 1)[0].u;
  // Z_2(2.9), the frozen Epstein value for s = 0.45.
  const double ref = brute_gagliardo_2d(u, 0.45, 9.71669729623871);
  EXPECT_NEAR(gagliardo_form(u, 2, 0.45), ref, 1e-10 * ref);
}

TEST(GagliardoForm, GaussianClosedForm) {
  const Grid g = Grid::half_space(1, 64.0, 4097, 4097);
  const TrialFunction u = gaussian(g, 10.0, 2.0);
  for (double s : {0.3, 0.5, 0.8}) {
    const double exact = gaussian_form(1, s, 2.0);
    EXPECT_NEAR(gagliardo_form(u, 1, s), exact, 1e-5 * exact) << s;
  }
}

TEST(GagliardoForm, BilinearConsistency) {
  const Grid g = Grid::half_space(2, 8.0, 33, 33);
  const auto suite = smooth_suite(g, 6, 2);
  const TrialFunction& u = suite[0].u;
  const TrialFunction& v = suite[1].u;
  const double s = 0.45;
  const double uu = bilinear_form(u, u, 2, s);
  EXPECT_NEAR(uu, gagliardo_form(u, 2, s), 1e-12 * uu);
  // Polarization.
  const double uv = bilinear_form(u, v, 2, s);
  const double sum = gagliardo_form(u + v, 2, s);
  const double vv = gagliardo_form(v, 2, s);
  EXPECT_NEAR(sum, uu + 2.0 * uv + vv, 1e-11 * sum);
  EXPECT_EQ(uv, bilinear_form(v, u, 2, s));
}

TEST(GagliardoForm, PartsSumToTotal) {
  const Grid g = Grid::half_space(1, 16.0, 129, 129);
  const TrialFunction u = gaussian(g, 5.0, 1.0);
  const GagliardoParts p = gagliardo_parts(u, 0.4);
  EXPECT_NEAR(p.total(), gagliardo_form(u, 1, 0.4), 1e-12 * p.total());
  EXPECT_GT(p.exterior, 0.0);
}

TEST(Hardy, WeightsIntegrateExactly) {
  // int_0^L x^{-2s} x^2 (L - x)^2 dx, a polynomial times the weight.
  const double s = 0.4;
  const double L = 4.0;
  const Grid g = Grid::half_space(1, L, 1025, 1025);
  const TrialFunction u = TrialFunction::sample(g, [&](const Point& x) { return x[0] * (L - x[0]); });
  using boost::math::quadrature::gauss_kronrod;
  const double ref = gauss_kronrod<double, 61>::integrate(
      [&](double x) { return std::pow(x, -2.0 * s) * x * x * (L - x) * (L - x); }, 0.0, L, 15, 1e-14);
  EXPECT_NEAR(hardy_term(u, s), ref, 1e-4 * ref);
}

TEST(Hardy, TransverseWeightsAreCellVolumes) {
  const Grid g = Grid::half_space(2, 4.0, 17, 17);
  const auto w = hardy_weights(g, 0.3);
  const auto w0 = norm_weights(g, 2.0, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Index3 k = g.multi(i);
    if (k[0] >= 2 && !g.on_boundary(k)) {
      EXPECT_NEAR(w[i], w0[i] * std::pow(k[0] * g.h(), -0.6), 1e-15);
    }
  }
}

TEST(WeightedNorm, HomogeneousOfDegreeOne) {
  const Grid g = Grid::half_space(1, 16.0, 257, 257);
  const TrialFunction u = gaussian(g, 6.0, 1.0);
  const double a = weighted_norm(u, 3.0, 0.2);
  EXPECT_NEAR(weighted_norm(u.scaled(-2.5), 3.0, 0.2), 2.5 * a, 1e-13 * a);
  EXPECT_THROW(weighted_norm(TrialFunction::sample(Grid::whole_space(1, 8.0, 65),
                                                   [](const Point&) { return 1.0; }),
                             3.0, 0.2),
               DomainError);
}

TEST(Energy, BackendsAgree) {
  const Grid g = Grid::standard(1);
  const TrialFunction u = gaussian(g, 10.0, 2.0);
  const Params p = Params::make(1, 0.4, 3.0, 0.3 * hardy_constant(0.4));
  const EnergyReport r = energy_report(u, p);
  EXPECT_NEAR(r.energy_fourier, r.energy_gagliardo, 2e-3 * r.fourier);
  EXPECT_NEAR(energy(u, p), r.energy_fourier, 1e-14 * r.fourier);
}

TEST(Decomposition, GagliardoSplitsIntoRegionalAndHardy) {
  const Grid g = Grid::half_space(1, 16.0, 1025, 1025);
  const TrialFunction u = gaussian(g, 4.0, 1.0);
  for (double s : {0.3, 0.6}) {
    const double G = gagliardo_form(u, 1, s);
    const double R = regional_form(u, 1, s);
    const double H = hardy_term(u, s);
    EXPECT_NEAR(G, R + gamma_constant(s) * H, 5e-3 * G) << s;
  }
  EXPECT_THROW(regional_form(gaussian(Grid::whole_space(1, 8.0, 65), 0.0, 1.0), 1, 0.3), DomainError);
}

TEST(Commutator, DefectMatchesBphi) {
  const Grid g = Grid::half_space(1, 16.0, 513, 513);
  const TrialFunction u = gaussian(g, 8.0, 1.5);
  const TrialFunction phi = gaussian(g, 7.0, 2.5);
  const CommutatorResult r = commutator_defect(u, phi, 1, 0.4);
  EXPECT_GT(r.b_phi, 0.0);
  // Exact for the pair sum; the near-diagonal cell term contributes O(h^2).
  EXPECT_NEAR(r.defect, r.b_phi, 1e-5 * r.b_phi);
}

TEST(FormReport, ZeroField) {
  const Grid g = Grid::half_space(1, 8.0, 9, 9);
  const FormReport r = form_report(TrialFunction::zero(g), 0.4);
  EXPECT_EQ(r.fourier_value, 0.0);
  EXPECT_EQ(r.gagliardo_value, 0.0);
  EXPECT_EQ(r.cross_check_defect, 0.0);
  ASSERT_TRUE(r.decomposition_residual.has_value());
  EXPECT_EQ(*r.decomposition_residual, 0.0);
  EXPECT_NE(to_json(r).find("\"exterior_model\": \"lattice-epstein\""), std::string::npos);
}

TEST(FormOrder, Guards) {
  const Grid g = Grid::half_space(1, 8.0, 65, 65);
  const TrialFunction u = gaussian(g, 4.0, 1.0);
  EXPECT_THROW(fourier_form(u, 1.0), DomainError);
  EXPECT_THROW(gagliardo_form(u, 1, 0.0), DomainError);
  EXPECT_THROW(gagliardo_form(u, 2, 0.3), DomainError);
}
