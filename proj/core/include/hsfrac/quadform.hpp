#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsfrac/constants.hpp"
#include "hsfrac/fft.hpp"
#include "hsfrac/grid.hpp"
#include "hsfrac/trial_function.hpp"

namespace hsfrac {

struct FormOptions {
  // Zero-padding factor per axis for the Fourier backend.
  int padding = 4;
};

// Fourier multiplier |xi|^{2s} on the zero-padded box. apply() returns the
// box restriction A u of the padded circulant operator, so that
// fourier_form(u) == h^n <u, A u> up to rounding. s = 0 gives the identity.
// Owns FFT workspace: use one instance per thread.
class FractionalOperator {
 public:
  FractionalOperator(const Grid& grid, double s, int padding = 4);

  const Grid& grid() const { return grid_; }
  double s() const { return s_; }
  int padding() const { return padding_; }

  std::vector<double> apply(std::span<const double> u);
  // h^n <u, A u>.
  double form(std::span<const double> u);
  // Spectral sum sum_k |xi_k|^{2s} |u_hat_k|^2 dxi with the unitary transform.
  double spectral_form(std::span<const double> u);
  // (|xi|^{2s} + mu)^{-1} applied to g, restricted to the box; boundary
  // nodes of the result are zero.
  std::vector<double> precondition(std::span<const double> g, double mu);

 private:
  void load(std::span<const double> u);
  std::vector<double> unload_scaled();

  Grid grid_;
  double s_;
  int padding_;
  RealFFT fft_;
  std::vector<double> symbol_;  // |xi|^{2s} on the half spectrum
};

// Discrete Gagliardo form on the infinite lattice hZ^n with u extended by
// zero. Kernel sums over the whole lattice are evaluated with Epstein zeta
// functions; in-box interactions with an FFT linear convolution. Owns FFT
// workspace: use one instance per thread.
class LatticeOperator {
 public:
  LatticeOperator(const Grid& grid, double s);

  const Grid& grid() const { return grid_; }
  double s() const { return s_; }
  // (C_{n,s}/2) h^{n-2s}.
  double scale() const { return scale_; }
  // Full-lattice kernel mass sum_{d != 0} |d|^{-n-2s}.
  double lattice_mass() const { return lattice_mass_; }
  // Kernel mass of the closed half-space (wall layer at half weight) seen
  // from height i1; half-space grids only.
  double half_space_mass(int i1) const;
  // Near-diagonal coefficient -Z_n(n+2s-2)/n (continued Epstein zeta); cancels
  // the O(h^{2-2s}) term of the lattice sum for smooth fields.
  double diagonal_coefficient() const { return diag_coeff_; }

  // (K * v) restricted to the box, K(d) = |d|^{-n-2s}, K(0) = 0.
  std::vector<double> convolve(std::span<const double> v);
  // K * 1 over all box nodes.
  const std::vector<double>& box_mass();

 private:
  Grid grid_;
  double s_;
  double scale_;
  double lattice_mass_;
  double diag_coeff_;
  std::vector<double> row_half_;
  std::vector<int> conv_shape_;
  RealFFT fft_;
  std::vector<double> kernel_hat_;
  std::vector<double> box_mass_;
};

// sum over nodes of grad(u) . grad(v) with central differences in lattice
// units and zero extension.
double difference_product(const Grid& grid, std::span<const double> u, std::span<const double> v);

double fourier_form(const TrialFunction& u, double s, const FormOptions& opt = {});
double gagliardo_form(const TrialFunction& u, int n, double s);
double bilinear_form(const TrialFunction& u, const TrialFunction& v, int n, double s);
// Gagliardo form restricted to the half-space: both points in x_1 > 0.
double regional_form(const TrialFunction& u, int n, double s);

// Node weights of the quadrature for int x_1^{-2s} u^2 and for
// int x_1^{-q} |u|^p. The first cell off the wall is integrated exactly for u
// linear on it; q = 0 gives plain cell volumes.
std::vector<double> hardy_weights(const Grid& grid, double s);
std::vector<double> norm_weights(const Grid& grid, double p, double q);

double hardy_term(const TrialFunction& u, double s);
// (int x_1^{-pb} |u|^p)^{1/p}; b = 0 allowed on whole-space grids.
double weighted_norm(const TrialFunction& u, double p, double b);

enum class Backend { fourier, gagliardo };

double energy(const TrialFunction& u, const Params& params, Backend backend = Backend::fourier,
              const FormOptions& opt = {});

struct EnergyReport {
  double fourier = 0.0;
  double gagliardo = 0.0;
  double hardy = 0.0;
  double energy_fourier = 0.0;
  double energy_gagliardo = 0.0;
};
EnergyReport energy_report(const TrialFunction& u, const Params& params,
                           const FormOptions& opt = {});

struct CommutatorResult {
  double defect = 0.0;
  double b_phi = 0.0;
};
// defect = G(phi u) - B(u, phi^2 u); b_phi = (C_{n,s}/2) sum u(x)u(y)(phi(x)-phi(y))^2 K.
CommutatorResult commutator_defect(const TrialFunction& u, const TrialFunction& phi, int n,
                                   double s);

struct GagliardoParts {
  double pair = 0.0;        // interactions between box nodes
  double exterior = 0.0;    // interactions with lattice nodes outside the box
  double correction = 0.0;  // near-diagonal cell contribution
  double total() const { return pair + exterior + correction; }
};
GagliardoParts gagliardo_parts(const TrialFunction& u, double s);

struct FormReport {
  Grid grid;
  double s = 0.0;
  int padding = 4;
  double fourier_value = 0.0;
  double gagliardo_value = 0.0;
  std::optional<double> regional_value{};
  std::optional<double> hardy_value{};
  double cross_check_defect = 0.0;
  // |G - R - gamma_s H| / G on half-space grids; 0 when G = 0.
  std::optional<double> decomposition_residual{};
  double tolerance = 5e-2;
  GagliardoParts parts{};
  std::string exterior_model = "lattice-epstein";
};

FormReport form_report(const TrialFunction& u, double s, const FormOptions& opt = {});
std::string to_json(const FormReport& r);

}  // namespace hsfrac
