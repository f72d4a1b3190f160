#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hsfrac/constants.hpp"
#include "hsfrac/error.hpp"

using namespace hsfrac;

namespace {

// Independent Gamma-function evaluations via lgamma, no shared code.
double hardy_oracle(double s) {
  return std::exp(2.0 * std::lgamma(s + 0.5)) / std::numbers::pi;
}

double gamma_oracle(double s) {
  return std::pow(2.0, 2.0 * s - 1.0) * std::tgamma(s + 0.5) /
         (std::sqrt(std::numbers::pi) * std::tgamma(1.0 - s));
}

}  // namespace

TEST(Constants, HalfOrderCoincidence) {
  EXPECT_NEAR(hardy_constant(0.5), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(gamma_constant(0.5), 1.0 / std::numbers::pi, 1e-15);
}

TEST(Constants, MatchLgammaOracle) {
  for (int k = 1; k < 20; ++k) {
    const double s = k / 20.0;
    EXPECT_NEAR(hardy_constant(s), hardy_oracle(s), 1e-13 * hardy_oracle(s)) << s;
    EXPECT_NEAR(gamma_constant(s), gamma_oracle(s), 1e-13 * gamma_oracle(s)) << s;
  }
}

TEST(Constants, HardyExceedsGammaAwayFromHalf) {
  for (int k = 1; k < 20; ++k) {
    if (k == 10) continue;
    const double s = k / 20.0;
    EXPECT_GT(hardy_constant(s), gamma_constant(s)) << s;
  }
}

TEST(Constants, GagliardoConstantKnownValues) {
  // n = 1, s = 1/2: C = (1/2) * 2 * Gamma(1) / (sqrt(pi) Gamma(1/2)) = 1/pi.
  EXPECT_NEAR(gagliardo_constant(1, 0.5), 1.0 / std::numbers::pi, 1e-15);
  // n = 3, s = 1/2: C = (1/2) * 2 * Gamma(2) / (pi^{3/2} sqrt(pi)) = 1/pi^2.
  EXPECT_NEAR(gagliardo_constant(3, 0.5), 1.0 / (std::numbers::pi * std::numbers::pi), 1e-15);
  // C_{n,s} -> 0 as s -> 0.
  EXPECT_LT(gagliardo_constant(2, 1e-6), 1e-5);
}

TEST(Exponents, CriticalAndScaling) {
  const Exponents e = derive_exponents(2, 0.45, 3.0);
  EXPECT_NEAR(e.two_star, 4.0 / 1.1, 1e-15);
  EXPECT_NEAR(e.b, 2.0 * (1.0 / 3.0 - 1.1 / 4.0), 1e-15);
  const Exponents c = derive_exponents(1, 0.25, 4.0);
  EXPECT_EQ(c.b, 0.0);
}

TEST(Exponents, SnapsNearCritical) {
  const double ts = 2.0 / (1.0 - 0.6);
  const Exponents e = derive_exponents(1, 0.3, ts * (1.0 + 1e-14));
  EXPECT_EQ(e.b, 0.0);
}

TEST(Exponents, Guards) {
  EXPECT_THROW(derive_exponents(1, 0.5, 3.0), DomainError);    // n = 2s
  EXPECT_THROW(derive_exponents(1, 0.3, 2.0), DomainError);    // p = 2
  EXPECT_THROW(derive_exponents(1, 0.3, 6.0), DomainError);    // p > 2*
  EXPECT_THROW(derive_exponents(4, 0.3, 2.5), DomainError);    // n > 3
  EXPECT_THROW(derive_exponents(1, 0.0, 2.5), DomainError);
}

TEST(Params, LambdaBelowHardy) {
  const double H = hardy_constant(0.4);
  EXPECT_NO_THROW(Params::make(1, 0.4, 3.0, 0.999 * H));
  EXPECT_NO_THROW(Params::make(1, 0.4, 3.0, -1e6));
  EXPECT_THROW(Params::make(1, 0.4, 3.0, H), DomainError);
  const Params c = Params::critical(2, 0.45, 0.8 * H);
  EXPECT_TRUE(c.is_critical());
  EXPECT_EQ(c.b(), 0.0);
  EXPECT_DOUBLE_EQ(c.p(), c.two_star());
}

TEST(ConstantsTable, ClosedFormOnly) {
  const ConstantsTable t = constants_table(2, 0.3);
  EXPECT_EQ(t.n, 2);
  EXPECT_DOUBLE_EQ(t.hardy, hardy_constant(0.3));
  EXPECT_DOUBLE_EQ(t.gagliardo, gagliardo_constant(2, 0.3));
  EXPECT_FALSE(t.sobolev.has_value());
}
