#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hsfrac/error.hpp"
#include "hsfrac/lattice.hpp"
#include "hsfrac/numeric.hpp"

using namespace hsfrac;

// Reference values computed independently with mpmath.
TEST(Epstein, OneDimensionIsTwiceRiemann) {
  for (double sigma : {1.6, 2.0, 2.8, 3.5}) {
    EXPECT_NEAR(lattice::epstein_zeta(1, sigma), 2.0 * std::riemann_zeta(sigma),
                1e-13 * std::riemann_zeta(sigma));
  }
}

TEST(Epstein, SquareLatticeFactorization) {
  // sum' |d|^{-2t} over Z^2 = 4 zeta(t) beta(t), Dirichlet beta.
  EXPECT_NEAR(lattice::epstein_zeta(2, 2.6), 13.1602784870449, 1e-11);
  EXPECT_NEAR(lattice::epstein_zeta(2, 2.9), 9.71669729623871, 1e-11);
}

TEST(Epstein, CubicLattice) {
  EXPECT_NEAR(lattice::epstein_zeta(3, 3.8), 19.6466076843207, 1e-11);
  EXPECT_NEAR(lattice::epstein_zeta(3, 3.5), 29.0291409917607, 1e-10);
}

TEST(Epstein, BruteForceBracket2D) {
  // Truncated square sums approach the value from below.
  const double sigma = 3.4;
  CompensatedSum acc;
  const int R = 400;
  for (int i = -R; i <= R; ++i) {
    for (int j = -R; j <= R; ++j) {
      if (i == 0 && j == 0) continue;
      acc.add(std::pow(double(i) * i + double(j) * j, -sigma / 2));
    }
  }
  // Remaining tail is below 2 pi R^{2-sigma}/(sigma-2).
  const double tail = 2.0 * std::numbers::pi * std::pow(R, 2.0 - sigma) / (sigma - 2.0);
  const double z = lattice::epstein_zeta(2, sigma);
  EXPECT_GT(z, acc.value());
  EXPECT_LT(z, acc.value() + tail);
}

TEST(Hurwitz, MatchesDirectSum) {
  // zeta(3, 5) = zeta(3) - sum_{k<5} k^-3.
  double head = 0.0;
  for (int k = 1; k < 5; ++k) head += std::pow(k, -3.0);
  EXPECT_NEAR(lattice::hurwitz_zeta(3.0, 5.0), std::riemann_zeta(3.0) - head, 1e-14);
}

TEST(LayerSums, DecomposeLattice) {
  // Z_2 = 2 * sum_{k>=1} k^-sigma + 2 * sum_{k>=1} layer_sum(1, sigma, k).
  const double sigma = 2.6;
  const double z = 2.0 * lattice::layer_tail(0, sigma, 1) + 2.0 * lattice::layer_tail(1, sigma, 1);
  EXPECT_NEAR(z, lattice::epstein_zeta(2, sigma), 1e-12);
}

TEST(LayerSums, LayerSumAgainstBruteForce) {
  // layer_sum(1, sigma, k) = sum_{j in Z} (k^2 + j^2)^{-sigma/2}.
  for (int k : {1, 3, 60}) {
    const int J = 200000;
    CompensatedSum acc;
    for (int j = -J; j <= J; ++j) acc.add(std::pow(double(k) * k + double(j) * j, -1.3));
    // Midpoint-rule tail of both sides, accurate to O(J^-3.6).
    acc.add(2.0 * std::pow(J + 0.5, -1.6) / 1.6);
    EXPECT_NEAR(lattice::layer_sum(1, 2.6, k), acc.value(), 1e-10 * acc.value()) << k;
  }
}

TEST(EpsteinContinued, OneDimensionIsTwiceRiemann) {
  for (double sigma : {-0.9, -0.4, 0.5, 0.99, 1.01, 2.0, 3.5}) {
    const double ref = 2.0 * std::riemann_zeta(sigma);
    EXPECT_NEAR(lattice::epstein_zeta_continued(1, sigma), ref, 1e-12 * std::abs(ref)) << sigma;
  }
}

TEST(EpsteinContinued, ValueAtZero) {
  for (int n = 1; n <= 3; ++n) EXPECT_NEAR(lattice::epstein_zeta_continued(n, 0.0), -1.0, 1e-14);
}

TEST(EpsteinContinued, AgreesWithLayerSumsAbovePole) {
  EXPECT_NEAR(lattice::epstein_zeta_continued(2, 2.6), lattice::epstein_zeta(2, 2.6), 1e-12);
  EXPECT_NEAR(lattice::epstein_zeta_continued(3, 3.8), lattice::epstein_zeta(3, 3.8), 1e-12);
}

TEST(EpsteinContinued, BelowPoleReferenceValues) {
  // 4 zeta(t) beta(t) with t = sigma/2, evaluated with mpmath Hurwitz zetas.
  EXPECT_NEAR(lattice::epstein_zeta_continued(2, 0.9), -3.3514361470026716698, 1e-12);
  EXPECT_NEAR(lattice::epstein_zeta_continued(2, 1.5), -10.07755947879315279, 1e-11);
  // Cubic lattice at sigma = 1 (the Madelung-type constant of the simple cubic lattice).
  EXPECT_NEAR(lattice::epstein_zeta_continued(3, 1.0), -2.8372974794806, 1e-11);
  EXPECT_THROW(lattice::epstein_zeta_continued(2, 2.0), DomainError);
}

TEST(NumericSums, CompensatedBeatsNaive) {
  CompensatedSum acc;
  acc.add(1e16);
  for (int i = 0; i < 1000; ++i) acc.add(1.0);
  acc.add(-1e16);
  EXPECT_EQ(acc.value(), 1000.0);
}
