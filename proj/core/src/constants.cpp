#include "hsfrac/constants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hsfrac/error.hpp"

namespace hsfrac {
namespace {

constexpr double kSnap = 1e-12;

void require_order(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    std::ostringstream os;
    os << "order s=" << s << " outside (0,1)";
    throw DomainError(os.str());
  }
}

}  // namespace

double hardy_constant(double s) {
  require_order(s);
  const double g = std::tgamma(s + 0.5);
  return g * g / std::numbers::pi;
}

double gagliardo_constant(int n, double s) {
  require_order(s);
  if (n < 1) throw DomainError("dimension must be >= 1");
  const double half_n = 0.5 * n;
  return s * std::pow(2.0, 2.0 * s) * std::tgamma(half_n + s) /
         (std::pow(std::numbers::pi, half_n) * std::tgamma(1.0 - s));
}

double gamma_constant(double s) {
  require_order(s);
  return std::pow(2.0, 2.0 * s - 1.0) * std::tgamma(s + 0.5) /
         (std::sqrt(std::numbers::pi) * std::tgamma(1.0 - s));
}

Exponents derive_exponents(int n, double s, double p) {
  require_order(s);
  if (n < 1 || n > 3) throw DomainError("dimension must be 1, 2 or 3");
  if (!(n > 2.0 * s)) throw DomainError("need n > 2s");
  const double two_star = 2.0 * n / (n - 2.0 * s);
  if (std::abs(p - two_star) <= kSnap * two_star) return {two_star, 0.0};
  if (!(p > 2.0 && p < two_star)) {
    std::ostringstream os;
    os << "exponent p=" << p << " outside (2, " << two_star << "]";
    throw DomainError(os.str());
  }
  return {two_star, n * (1.0 / p - 1.0 / two_star)};
}

Params::Params(int n, double s, double p, double lambda)
    : n_(n), s_(s), p_(p), lambda_(lambda) {
  const Exponents e = derive_exponents(n, s, p);
  two_star_ = e.two_star;
  b_ = e.b;
  if (b_ == 0.0) p_ = two_star_;
  if (!std::isfinite(lambda) || !(lambda < hardy_constant(s))) {
    std::ostringstream os;
    os << "coupling lambda=" << lambda << " must be below H_s=" << hardy_constant(s);
    throw DomainError(os.str());
  }
}

Params Params::make(int n, double s, double p, double lambda) {
  return Params(n, s, p, lambda);
}

Params Params::critical(int n, double s, double lambda) {
  if (!(n > 2.0 * s)) throw DomainError("need n > 2s");
  return Params(n, s, 2.0 * n / (n - 2.0 * s), lambda);
}

ConstantsTable constants_table(int n, double s) {
  ConstantsTable t;
  t.s = s;
  t.n = n;
  t.hardy = hardy_constant(s);
  t.gagliardo = gagliardo_constant(n, s);
  t.gamma = gamma_constant(s);
  return t;
}

}  // namespace hsfrac
