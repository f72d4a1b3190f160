#include <cmath>
#include <vector>

#include "hsfrac/error.hpp"
#include "hsfrac/fields.hpp"
#include "hsfrac/optimizer.hpp"

namespace hsfrac {

Estimate sobolev_estimate(int n, double s, double L0, double h, int boxes, int padding) {
  if (!(n > 2.0 * s)) throw DomainError("Sobolev estimate needs n > 2s");
  if (boxes < 3) throw DomainError("Sobolev estimate needs at least three boxes");
  const QuotientSpec spec{n, s, 2.0 * n / (n - 2.0 * s), 0.0, 0.0};
  std::vector<double> q;
  double L = L0;
  for (int k = 0; k < boxes; ++k, L *= 2.0) {
    const int m = static_cast<int>(std::lround(L / h)) + 1;
    const Grid g = Grid::whole_space(n, L, m);
    q.push_back(rayleigh_quotient(bubble(g, {0.0, 0.0, 0.0}, 1.0, s), spec, padding));
  }
  // Truncating the bubble at box length L perturbs the energy by O(L^{-(n-2s)})
  // and the critical norm by O(L^{-n}); eliminate both terms in turn.
  const auto richardson = [](const std::vector<double>& v, double rate) {
    std::vector<double> out;
    for (std::size_t k = 1; k < v.size(); ++k) {
      out.push_back((rate * v[k] - v[k - 1]) / (rate - 1.0));
    }
    return out;
  };
  const std::vector<double> e1 = richardson(q, std::pow(2.0, n - 2.0 * s));
  const std::vector<double> e2 = richardson(e1, std::pow(2.0, n));
  const double last = e2.back();
  const double prev = e2.size() >= 2 ? e2[e2.size() - 2] : e1.back();
  return {last, std::abs(last - prev)};
}

Estimate sobolev_estimate(int n, double s) {
  switch (n) {
    case 1:
      return sobolev_estimate(1, s, 64.0, 1.0 / 64.0, 5);
    case 2:
      return sobolev_estimate(2, s, 16.0, 1.0 / 8.0, 4);
    case 3:
      return sobolev_estimate(3, s, 8.0, 1.0 / 4.0, 3);
    default:
      throw DomainError("dimension must be 1, 2 or 3");
  }
}

}  // namespace hsfrac
