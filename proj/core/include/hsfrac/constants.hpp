#pragma once

#include <optional>

namespace hsfrac {

// Sharp half-space Hardy constant Gamma(s+1/2)^2 / pi. Requires 0 < s < 1.
double hardy_constant(double s);

// Normalization of the Gagliardo form of the fractional Laplacian:
// s 4^s Gamma(n/2+s) / (pi^{n/2} Gamma(1-s)). Requires n >= 1, 0 < s < 1.
double gagliardo_constant(int n, double s);

// Coefficient of the boundary Hardy term in the half-space splitting of the
// fractional form: 2^{2s-1} Gamma(s+1/2) / (sqrt(pi) Gamma(1-s)).
double gamma_constant(double s);

struct Exponents {
  double two_star;
  double b;
};

// Critical exponent 2n/(n-2s) and weight exponent b = n(1/p - 1/two_star).
// p within 1e-12 of two_star is snapped so that b == 0 exactly.
Exponents derive_exponents(int n, double s, double p);

class Params {
 public:
  static Params make(int n, double s, double p, double lambda);
  static Params critical(int n, double s, double lambda);

  int n() const { return n_; }
  double s() const { return s_; }
  double p() const { return p_; }
  double lambda() const { return lambda_; }
  double two_star() const { return two_star_; }
  double b() const { return b_; }
  bool is_critical() const { return b_ == 0.0; }

 private:
  Params(int n, double s, double p, double lambda);

  int n_;
  double s_;
  double p_;
  double lambda_;
  double two_star_;
  double b_;
};

struct Estimate {
  double value = 0.0;
  double uncertainty = 0.0;
};

struct ConstantsTable {
  double s = 0.0;
  int n = 1;
  double hardy = 0.0;
  double gagliardo = 0.0;
  double gamma = 0.0;
  std::optional<Estimate> sobolev;
};

// Closed-form entries only; sobolev stays empty.
ConstantsTable constants_table(int n, double s);

}  // namespace hsfrac
