#include "hsfrac/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "hsfrac/error.hpp"
#include "hsfrac/fields.hpp"
#include "hsfrac/numeric.hpp"

namespace hsfrac {
namespace {

void check_spec(const Grid& grid, const QuotientSpec& spec) {
  if (grid.n() != spec.n) throw DomainError("quotient dimension does not match the grid");
  if (!(spec.s > 0.0 && spec.s < 1.0)) throw DomainError("quotient order must lie in (0,1)");
  if (!(spec.p >= 2.0)) throw DomainError("quotient exponent must be >= 2");
  if (!(spec.b >= 0.0)) throw DomainError("quotient weight exponent must be >= 0");
  if (grid.domain() == Domain::whole_space && (spec.lambda != 0.0 || spec.b != 0.0)) {
    throw DomainError("whole-space quotient needs lambda = 0 and b = 0");
  }
}

double pow_abs(double x, double p) { return std::pow(std::abs(x), p); }

}  // namespace

QuotientSpec QuotientSpec::from(const Params& params) {
  return {params.n(), params.s(), params.p(), params.b(), params.lambda()};
}

QuotientFunctional::QuotientFunctional(const Grid& grid, const QuotientSpec& spec, int padding)
    : spec_(spec), op_(grid, spec.s, padding) {
  check_spec(grid, spec);
  w_norm_ = norm_weights(grid, spec.p, spec.p * spec.b);
  if (spec.lambda != 0.0) {
    w_hardy_ = hardy_weights(grid, spec.s);
  } else {
    w_hardy_.assign(grid.size(), 0.0);
  }
}

QuotientFunctional::Parts QuotientFunctional::parts(std::span<const double> u) {
  Parts pr;
  pr.au = op_.apply(u);
  pr.form = grid().cell_volume() * ordered_dot(u, pr.au);
  CompensatedSum hardy;
  CompensatedSum np;
  for (std::size_t i = 0; i < u.size(); ++i) {
    hardy.add(w_hardy_[i] * u[i] * u[i]);
    np.add(w_norm_[i] * pow_abs(u[i], spec_.p));
  }
  pr.hardy = hardy.value();
  pr.norm_p = np.value();
  return pr;
}

double QuotientFunctional::norm(std::span<const double> u) const {
  CompensatedSum np;
  for (std::size_t i = 0; i < u.size(); ++i) np.add(w_norm_[i] * pow_abs(u[i], spec_.p));
  return std::pow(np.value(), 1.0 / spec_.p);
}

double QuotientFunctional::value(std::span<const double> u) {
  const Parts pr = parts(u);
  if (!(pr.norm_p > 0.0)) throw DomainError("quotient undefined: weighted norm is zero");
  return (pr.form - spec_.lambda * pr.hardy) / std::pow(pr.norm_p, 2.0 / spec_.p);
}

std::vector<double> QuotientFunctional::gradient(std::span<const double> u) {
  const Parts pr = parts(u);
  if (!(pr.norm_p > 0.0)) throw DomainError("quotient undefined: weighted norm is zero");
  const double p = spec_.p;
  const double N = std::pow(pr.norm_p, 1.0 / p);
  const double E = pr.form - spec_.lambda * pr.hardy;
  const double vol = grid().cell_volume();
  const double inv_n2 = 1.0 / (N * N);
  // dN/du_i = N^{1-p} w_i |u_i|^{p-2} u_i
  const double c_norm = 2.0 * E * std::pow(N, -3.0) * std::pow(N, 1.0 - p);
  std::vector<double> g(u.size());
  const Grid& gr = grid();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (gr.on_boundary(gr.multi(i))) {
      g[i] = 0.0;
      continue;
    }
    const double dE = 2.0 * vol * pr.au[i] - 2.0 * spec_.lambda * w_hardy_[i] * u[i];
    const double dN = w_norm_[i] * pow_abs(u[i], p - 2.0) * u[i];
    g[i] = dE * inv_n2 - c_norm * dN;
  }
  return g;
}

double QuotientFunctional::euler_lagrange_residual(std::span<const double> u) {
  const Parts pr = parts(u);
  if (!(pr.norm_p > 0.0)) throw DomainError("residual undefined: weighted norm is zero");
  const double p = spec_.p;
  const double N = std::pow(pr.norm_p, 1.0 / p);
  const double R = (pr.form - spec_.lambda * pr.hardy) / (N * N);
  if (!(R > 0.0)) throw DomainError("residual needs a positive quotient");
  // c u has N(c u)^p = R^{p/(p-2)}.
  const double c = std::pow(R, 1.0 / (p - 2.0)) / N;
  const double vol = grid().cell_volume();
  const Grid& gr = grid();
  CompensatedSum res2;
  CompensatedSum lhs2;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (gr.on_boundary(gr.multi(i))) continue;
    const double v = c * u[i];
    const double lhs = c * (vol * pr.au[i] - spec_.lambda * w_hardy_[i] * u[i]);
    const double rhs = w_norm_[i] * pow_abs(v, p - 2.0) * v;
    res2.add((lhs - rhs) * (lhs - rhs));
    lhs2.add(lhs * lhs);
  }
  return std::sqrt(res2.value() / lhs2.value());
}

double rayleigh_quotient(const TrialFunction& u, const QuotientSpec& spec, int padding) {
  if (u.is_zero()) throw DomainError("quotient undefined for the zero field");
  QuotientFunctional f(u.grid(), spec, padding);
  return f.value(u.values());
}

double rayleigh_quotient(const TrialFunction& u, const Params& params, int padding) {
  return rayleigh_quotient(u, QuotientSpec::from(params), padding);
}

std::vector<double> quotient_gradient(const TrialFunction& u, const Params& params, int padding) {
  if (u.is_zero()) throw DomainError("gradient undefined for the zero field");
  QuotientFunctional f(u.grid(), QuotientSpec::from(params), padding);
  return f.gradient(u.values());
}

double euler_lagrange_residual(const TrialFunction& u, const Params& params, int padding) {
  if (u.is_zero()) throw DomainError("residual undefined for the zero field");
  QuotientFunctional f(u.grid(), QuotientSpec::from(params), padding);
  return f.euler_lagrange_residual(u.values());
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::tolerance:
      return "tolerance";
    case Termination::max_iters:
      return "max_iters";
    case Termination::stall:
      return "stall";
  }
  return "unknown";
}

TrialFunction default_initial_field(const Grid& grid, double s) {
  Point c{0.0, 0.0, 0.0};
  if (grid.domain() == Domain::half_space) c[0] = std::max(2.0, 0.25 * grid.hi(0));
  return bubble(grid, c, 1.0, s);
}

MinimizerReport minimize_quotient(const QuotientSpec& spec, const TrialFunction& init,
                                  const OptimizerOptions& opts) {
  const Grid& grid = init.grid();
  QuotientFunctional f(grid, spec, opts.padding);
  std::vector<double> u(init.values().begin(), init.values().end());
  const double n0 = f.norm(u);
  if (!(n0 > 0.0)) throw DomainError("initial field has zero weighted norm");
  for (double& x : u) x /= n0;

  const double L1 = grid.hi(0) - grid.lo(0);
  const double mu = std::pow(2.0 * std::numbers::pi / L1, 2.0 * spec.s);

  std::vector<double> trace{f.value(u)};
  Termination term = Termination::max_iters;
  double t = opts.initial_step;
  int it = 0;
  std::vector<double> v(u.size());
  for (; it < opts.max_iters; ++it) {
    const std::vector<double> g = f.gradient(u);
    const std::vector<double> d = opts.precondition ? f.precondition(g, mu) : g;
    const double gd = ordered_dot(g, d);
    if (!(gd > 0.0)) {
      term = Termination::tolerance;
      break;
    }
    if (it > 0) t = std::min(2.0 * t, opts.max_step);
    const double r = trace.back();
    bool accepted = false;
    double rv = r;
    for (int k = 0; k < opts.max_halvings; ++k) {
      for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] - t * d[i];
      const double nv = f.norm(v);
      if (nv > 0.0) {
        rv = f.value(v);
        if (rv <= r - opts.armijo * t * gd) {
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) {
      term = Termination::stall;
      break;
    }
    const double nv = f.norm(v);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = v[i] / nv;
    trace.push_back(rv);
    const std::size_t k = trace.size();
    if (k > 10 && std::abs(trace[k - 11] - trace[k - 1]) < opts.tol * std::abs(trace[k - 1])) {
      ++it;
      term = Termination::tolerance;
      break;
    }
  }

  TrialFunction final_field(grid, u);
  MinimizerReport rep{spec, opts, std::move(trace), 0.0, final_field, term, it, 0.0, {}};
  rep.best_quotient = rep.quotient_trace.back();
  rep.euler_lagrange_residual =
      rep.best_quotient > 0.0 ? f.euler_lagrange_residual(u) : std::nan("");
  rep.window_profile = window_mass_profile(final_field, spec.p, spec.b);
  return rep;
}

MinimizerReport minimize_quotient(const Params& params, const TrialFunction& init,
                                  const OptimizerOptions& opts) {
  return minimize_quotient(QuotientSpec::from(params), init, opts);
}

RunClass classify_run(std::span<const MinimizerReport> reports, const ClassifyThresholds& th) {
  if (reports.size() < 2) throw DomainError("classification needs at least two reports");
  const MinimizerReport& ref = reports.front();
  std::vector<WindowProfile> profiles;
  std::vector<double> lengths;
  for (const MinimizerReport& r : reports) {
    const Grid& g = r.final_field.grid();
    const Grid& g0 = ref.final_field.grid();
    const auto differs = [](double a, double b) {
      return std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a));
    };
    if (g.n() != g0.n() || g.domain() != g0.domain() || r.spec.n != ref.spec.n ||
        differs(r.spec.s, ref.spec.s) || differs(r.spec.p, ref.spec.p) ||
        differs(r.spec.b, ref.spec.b) || differs(r.spec.lambda, ref.spec.lambda)) {
      throw DomainError("reports to classify are inconsistent");
    }
    profiles.push_back(r.window_profile);
    lengths.push_back(g.hi(0) - g.lo(0));
  }
  return classify_profiles(profiles, lengths, th);
}

void write_trace_csv(std::ostream& os, const MinimizerReport& r) {
  os << "iteration,quotient\n";
  char buf[64];
  for (std::size_t i = 0; i < r.quotient_trace.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, r.quotient_trace[i]);
    os << buf;
  }
}

}  // namespace hsfrac
