#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hsfrac/constants.hpp"
#include "hsfrac/quadform.hpp"
#include "hsfrac/trial_function.hpp"
#include "hsfrac/windows.hpp"

namespace hsfrac {

// Quotient data without the Params validity checks, for probes at or beyond
// the admissible range (lambda = H_s, mis-set b, p = 2).
struct QuotientSpec {
  int n = 1;
  double s = 0.5;
  double p = 2.0;
  double b = 0.0;
  double lambda = 0.0;

  static QuotientSpec from(const Params& params);
};

// Discrete (E(u) - lambda H(u)) / N(u)^2 with E = h^n <u, A u> from the
// Fourier multiplier, H the Hardy quadrature and N the weighted p-norm.
// Owns FFT workspace: use one instance per thread.
class QuotientFunctional {
 public:
  QuotientFunctional(const Grid& grid, const QuotientSpec& spec, int padding = 2);

  const Grid& grid() const { return op_.grid(); }
  const QuotientSpec& spec() const { return spec_; }

  struct Parts {
    std::vector<double> au;
    double form = 0.0;
    double hardy = 0.0;
    double norm_p = 0.0;  // sum of w |u|^p
  };
  Parts parts(std::span<const double> u);
  double value(std::span<const double> u);
  std::vector<double> gradient(std::span<const double> u);
  // Weighted p-norm of u.
  double norm(std::span<const double> u) const;
  // || h^n A u - lambda W_H u - w_N |u|^{p-2} u || / || h^n A u || after
  // rescaling u so that N^p = R^{p/(p-2)}.
  double euler_lagrange_residual(std::span<const double> u);
  std::vector<double> precondition(std::span<const double> g, double mu) {
    return op_.precondition(g, mu);
  }

 private:
  QuotientSpec spec_;
  FractionalOperator op_;
  std::vector<double> w_hardy_;
  std::vector<double> w_norm_;
};

double rayleigh_quotient(const TrialFunction& u, const QuotientSpec& spec, int padding = 4);
double rayleigh_quotient(const TrialFunction& u, const Params& params, int padding = 4);
std::vector<double> quotient_gradient(const TrialFunction& u, const Params& params,
                                      int padding = 4);
double euler_lagrange_residual(const TrialFunction& u, const Params& params, int padding = 4);

enum class Termination { tolerance, max_iters, stall };
std::string to_string(Termination t);

struct OptimizerOptions {
  int max_iters = 5000;
  // Relative quotient change over the last 10 accepted steps.
  double tol = 1e-8;
  double armijo = 1e-4;
  int max_halvings = 60;
  // Fourier zero-padding; the periodization bias falls about 4x per doubling.
  int padding = 4;
  // Descent along (|xi|^{2s} + mu)^{-1} grad with mu = (2 pi / L_1)^{2s}.
  bool precondition = true;
  double initial_step = 1.0;
  // Each line search starts from min(2 t_prev, max_step).
  double max_step = 1e3;
};

struct MinimizerReport {
  QuotientSpec spec;
  OptimizerOptions options;
  std::vector<double> quotient_trace;
  double best_quotient = 0.0;
  TrialFunction final_field;
  Termination termination = Termination::max_iters;
  int iterations = 0;
  double euler_lagrange_residual = 0.0;
  WindowProfile window_profile;
};

// Interior bubble of scale 1 at (max(2, L1/4), 0, ...) on half-space grids,
// at the origin on whole-space grids.
TrialFunction default_initial_field(const Grid& grid, double s);

MinimizerReport minimize_quotient(const QuotientSpec& spec, const TrialFunction& init,
                                  const OptimizerOptions& opts = {});
MinimizerReport minimize_quotient(const Params& params, const TrialFunction& init,
                                  const OptimizerOptions& opts = {});

RunClass classify_run(std::span<const MinimizerReport> reports, const ClassifyThresholds& th = {});

std::string to_json(const MinimizerReport& r, bool include_trace = true);
void write_trace_csv(std::ostream& os, const MinimizerReport& r);

// Whole-space bubble quotient Q(U_s)/||U_s||_{2*}^2 on boxes of length
// L0 2^k, k < boxes, at fixed spacing h. Box truncation leaves error terms
// in L^{-(n-2s)} and L^{-n}, removed by two rounds of Richardson
// extrapolation. value is the last extrapolant, uncertainty its distance to
// the previous one (or to the first-round value when boxes = 3).
Estimate sobolev_estimate(int n, double s, double L0, double h, int boxes, int padding = 2);
Estimate sobolev_estimate(int n, double s);

}  // namespace hsfrac
