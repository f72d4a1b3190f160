#include "hsfrac/lattice.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_zeta.h>

#include <cmath>
#include <numbers>

#include "hsfrac/error.hpp"

namespace hsfrac::lattice {
namespace {

// Bessel terms are dropped once 2 pi k |m| exceeds this (K_nu ~ e^{-x}).
constexpr double kBesselCut = 50.0;

double lead_coefficient(int d, double sigma) {
  const double nu = 0.5 * (sigma - d);
  return std::pow(std::numbers::pi, 0.5 * d) * std::tgamma(nu) / std::tgamma(0.5 * sigma);
}

// sum_{m in Z^d, m != 0} |m|^nu K_nu(2 pi k |m|), scaled by the Poisson prefactor.
double bessel_part(int d, double sigma, double k) {
  if (d == 0) return 0.0;
  const double nu = 0.5 * (sigma - d);
  const double pref = 2.0 * std::pow(std::numbers::pi, 0.5 * sigma) / std::tgamma(0.5 * sigma) *
                      std::pow(k, -nu);
  const long mmax = static_cast<long>(std::ceil(kBesselCut / (2.0 * std::numbers::pi * k)));
  double acc = 0.0;
  if (d == 1) {
    for (long m = mmax; m >= 1; --m) {
      const double x = 2.0 * std::numbers::pi * k * m;
      if (x > kBesselCut) continue;
      acc += 2.0 * std::pow(static_cast<double>(m), nu) * std::cyl_bessel_k(nu, x);
    }
  } else {
    for (long a = -mmax; a <= mmax; ++a) {
      for (long b = -mmax; b <= mmax; ++b) {
        if (a == 0 && b == 0) continue;
        const double r = std::sqrt(static_cast<double>(a * a + b * b));
        const double x = 2.0 * std::numbers::pi * k * r;
        if (x > kBesselCut) continue;
        acc += std::pow(r, nu) * std::cyl_bessel_k(nu, x);
      }
    }
  }
  return pref * acc;
}

// int_1^inf t^{a-1} (theta_n(t) - 1) dt with theta_n(t) = sum_z exp(-pi t |z|^2),
// summed over |z_i| <= kThetaRadius; dropped terms are below exp(-pi 49).
constexpr int kThetaRadius = 7;

double theta_tail(int n, double a) {
  const int r1 = kThetaRadius;
  const int r2 = n >= 2 ? kThetaRadius : 0;
  const int r3 = n >= 3 ? kThetaRadius : 0;
  double acc = 0.0;
  for (int i = -r1; i <= r1; ++i) {
    for (int j = -r2; j <= r2; ++j) {
      for (int k = -r3; k <= r3; ++k) {
        const int q = i * i + j * j + k * k;
        if (q == 0 || q > kThetaRadius * kThetaRadius) continue;
        const double x = std::numbers::pi * q;
        acc += std::pow(x, -a) * gsl_sf_gamma_inc(a, x);
      }
    }
  }
  return acc;
}

void require_layer(int d, double sigma) {
  if (d < 0 || d > 2) throw DomainError("layer dimension must be 0, 1 or 2");
  if (!(sigma > d + 1.0)) throw DomainError("layer sums need sigma > d + 1");
}

}  // namespace

double hurwitz_zeta(double sigma, double a) {
  if (!(sigma > 1.0) || !(a > 0.0)) throw DomainError("hurwitz_zeta needs sigma > 1, a > 0");
  gsl_sf_result r;
  if (gsl_sf_hzeta_e(sigma, a, &r) != GSL_SUCCESS) throw DomainError("hurwitz_zeta failed");
  return r.val;
}

double layer_sum(int d, double sigma, double k) {
  if (d < 0 || d > 2 || !(sigma > d)) throw DomainError("layer_sum needs 0 <= d <= 2, sigma > d");
  if (!(k > 0.0)) throw DomainError("layer_sum needs k > 0");
  if (d == 0) return std::pow(k, -sigma);
  return lead_coefficient(d, sigma) * std::pow(k, d - sigma) + bessel_part(d, sigma, k);
}

double layer_tail(int d, double sigma, long k0) {
  require_layer(d, sigma);
  if (k0 < 1) throw DomainError("layer_tail needs k0 >= 1");
  if (d == 0) return hurwitz_zeta(sigma, static_cast<double>(k0));
  double acc = lead_coefficient(d, sigma) * hurwitz_zeta(sigma - d, static_cast<double>(k0));
  const long kmax = static_cast<long>(std::ceil(kBesselCut / (2.0 * std::numbers::pi)));
  for (long k = kmax; k >= k0; --k) acc += bessel_part(d, sigma, static_cast<double>(k));
  return acc;
}

double epstein_zeta(int n, double sigma) {
  if (n < 1 || n > 3) throw DomainError("epstein_zeta needs 1 <= n <= 3");
  if (!(sigma > n)) throw DomainError("epstein_zeta needs sigma > n");
  double z = 0.0;
  for (int d = 0; d < n; ++d) z += 2.0 * layer_tail(d, sigma, 1);
  return z;
}

double epstein_zeta_continued(int n, double sigma) {
  if (n < 1 || n > 3) throw DomainError("epstein_zeta_continued needs 1 <= n <= 3");
  if (!std::isfinite(sigma) || std::abs(sigma - n) < 1e-12) {
    throw DomainError("epstein_zeta_continued has a pole at sigma = n");
  }
  // pi^{-sigma/2} Gamma(sigma/2) Z(sigma) = T(sigma/2) + T((n-sigma)/2)
  //   + 2/(sigma-n) - 2/sigma, with the -2/sigma term folded into 1/Gamma(1+sigma/2).
  const double half = 0.5 * sigma;
  const double bracket = theta_tail(n, half) + theta_tail(n, 0.5 * (n - sigma)) + 2.0 / (sigma - n);
  return std::pow(std::numbers::pi, half) *
         (bracket * gsl_sf_gammainv(half) - gsl_sf_gammainv(1.0 + half));
}

double lower_half_row(int n, double sigma, long i1) {
  if (i1 < 1) throw DomainError("lower_half_row needs i1 >= 1");
  const int d = n - 1;
  return epstein_zeta(n, sigma) - layer_tail(d, sigma, i1 + 1) -
         0.5 * layer_sum(d, sigma, static_cast<double>(i1));
}

}  // namespace hsfrac::lattice
