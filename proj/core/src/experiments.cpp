#include "hsfrac/experiments.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "hsfrac/error.hpp"
#include "hsfrac/fields.hpp"
#include "hsfrac/numeric.hpp"
#include "hsfrac/quadform.hpp"
#include "hsfrac/suite.hpp"

namespace hsfrac {
namespace {

// ------------------------------------------------------------ dispatch

// Runs fn(0..count-1) on up to hardware_concurrency threads. Each index
// writes only its own result slot, so output does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::mutex m;
  std::size_t next = 0;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lock(m);
          if (next >= count || error) return;
          i = next++;
        }
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ------------------------------------------------------------ grids

struct GridPair {
  Grid coarse;
  Grid fine;
};

struct Defaults {
  double L1;
  int m;
};

Defaults standard_defaults(int n) {
  switch (n) {
    case 1:
      return {64.0, 4097};
    case 2:
      return {32.0, 257};
    default:
      return {16.0, 65};
  }
}

GridPair resolve_pair(const ExperimentConfig& cfg, Defaults d, Domain dom) {
  const double L1 = cfg.grid.L1 > 0.0 ? cfg.grid.L1 : d.L1;
  const int m = cfg.grid.m > 0 ? cfg.grid.m : d.m;
  const int mc = cfg.grid.coarse_m > 0 ? cfg.grid.coarse_m : (m - 1) / 2 + 1;
  if (mc >= m) throw ConfigError("coarse resolution must be below the fine one");
  try {
    if (dom == Domain::half_space) {
      return {Grid::half_space(cfg.n, L1, mc, mc), Grid::half_space(cfg.n, L1, m, m)};
    }
    return {Grid::whole_space(cfg.n, L1, mc), Grid::whole_space(cfg.n, L1, m)};
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

// ------------------------------------------------------------ guards

double critical_p(int n, double s) { return 2.0 * n / (n - 2.0 * s); }

bool is_critical(int n, const ParamPoint& pt) {
  return !pt.p || std::abs(*pt.p - critical_p(n, pt.s)) <= 1e-12 * critical_p(n, pt.s);
}

Params checked_params(int n, const ParamPoint& pt) {
  try {
    return pt.p ? Params::make(n, pt.s, *pt.p, pt.lambda) : Params::critical(n, pt.s, pt.lambda);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

// ------------------------------------------------------------ runs

struct PairRun {
  MinimizerReport coarse;
  MinimizerReport fine;
  RunClass cls;
};

double half_diff(double a, double b) { return 0.5 * std::abs(a - b); }

using InitField = std::function<TrialFunction(const Grid&, double)>;

// For lambda <= 0 the wall only repels: start from the point farthest from it.
TrialFunction centered_initial_field(const Grid& g, double s) {
  return bubble(g, {0.5 * (g.lo(0) + g.hi(0)), 0.0, 0.0}, 1.0, s);
}

PairRun run_pair(const QuotientSpec& spec, const GridPair& g, const OptimizerOptions& opts,
                 const InitField& init = default_initial_field) {
  MinimizerReport c = minimize_quotient(spec, init(g.coarse, spec.s), opts);
  MinimizerReport f = minimize_quotient(spec, init(g.fine, spec.s), opts);
  std::vector<MinimizerReport> both{c, f};
  const RunClass cls = classify_run(both);
  return {std::move(c), std::move(f), cls};
}

// Quotient of the final field at doubled padding minus the reported one; to
// first order the shift of the minimum itself.
double padding_shift(const MinimizerReport& r) {
  return rayleigh_quotient(r.final_field, r.spec, 2 * r.options.padding) - r.best_quotient;
}

void add_run_columns(RowBuilder& row, const PairRun& r) {
  const auto& wc = r.coarse.window_profile;
  const auto& wf = r.fine.window_profile;
  const double q = r.fine.best_quotient;
  row.num("quotient", q, half_diff(q, r.coarse.best_quotient))
      .exact("drift_rel", std::abs(q - r.coarse.best_quotient) / std::abs(q))
      .num("dominance", wf.dominance, half_diff(wf.dominance, wc.dominance))
      .num("half_mass_radius", wf.half_mass_radius,
           half_diff(wf.half_mass_radius, wc.half_mass_radius))
      .num("centroid_x1", wf.centroid_x1, half_diff(wf.centroid_x1, wc.centroid_x1))
      .exact("padding_shift", padding_shift(r.fine))
      .num("el_residual", r.fine.euler_lagrange_residual,
           half_diff(r.fine.euler_lagrange_residual, r.coarse.euler_lagrange_residual))
      .integer("iterations", r.fine.iterations)
      .text("termination", to_string(r.fine.termination))
      .text("classification", to_string(r.cls));
}

Curve trace_curve(const MinimizerReport& r) {
  Curve c{"iteration", "quotient", {}};
  for (std::size_t i = 0; i < r.quotient_trace.size(); ++i) {
    c.points.emplace_back(static_cast<double>(i), r.quotient_trace[i]);
  }
  return c;
}

ExperimentResult make_result(const ExperimentConfig& cfg, const GridPair& g) {
  ExperimentResult r;
  r.experiment = cfg.experiment;
  r.config_hash = fnv1a_hex(cfg.canonical.empty() ? canonical_config(cfg) : cfg.canonical);
  r.resolution_pair = {g.coarse.m(0), g.fine.m(0)};
  r.seed = cfg.seed;
  return r;
}

// int over the unit ball of (h + y_1)^{-2s} phi(y)^2, by nested adaptive
// Gauss-Kronrod.
double weighted_profile_integral(int n, double s, double h, const Profile& phi) {
  using boost::math::quadrature::gauss_kronrod;
  const auto radial = [&](double y1) {
    const double w = s == 0.0 ? 1.0 : std::pow(h + y1, -2.0 * s);
    const double rho = std::sqrt(std::max(0.0, 1.0 - y1 * y1));
    if (n == 1) {
      const double v = phi({y1, 0.0, 0.0});
      return w * v * v;
    }
    if (n == 2) {
      return w * gauss_kronrod<double, 31>::integrate(
                      [&](double y2) {
                        const double v = phi({y1, y2, 0.0});
                        return v * v;
                      },
                      -rho, rho, 10, 1e-12);
    }
    return w * gauss_kronrod<double, 31>::integrate(
                   [&](double y2) {
                     const double r3 = std::sqrt(std::max(0.0, rho * rho - y2 * y2));
                     return gauss_kronrod<double, 31>::integrate(
                         [&](double y3) {
                           const double v = phi({y1, y2, y3});
                           return v * v;
                         },
                         -r3, r3, 8, 1e-10);
                   },
                   -rho, rho, 8, 1e-10);
  };
  return gauss_kronrod<double, 31>::integrate(radial, -1.0, 1.0, 12, 1e-12);
}

}  // namespace

// ------------------------------------------------------------ subcritical

ExperimentResult exp_subcritical(const ExperimentConfig& cfg) {
  for (const ParamPoint& pt : cfg.points) {
    if (is_critical(cfg.n, pt)) throw ConfigError("subcritical experiment rejects p = 2*_s");
    checked_params(cfg.n, pt);
  }
  const GridPair g = resolve_pair(cfg, standard_defaults(cfg.n), Domain::half_space);
  ExperimentResult res = make_result(cfg, g);
  std::vector<std::optional<PairRun>> runs(cfg.points.size());
  parallel_for(runs.size(), [&](std::size_t k) {
    runs[k] = run_pair(QuotientSpec::from(checked_params(cfg.n, cfg.points[k])), g, cfg.optimizer);
  });
  Table& t = res.tables["best_quotient"];
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Params p = checked_params(cfg.n, cfg.points[k]);
    RowBuilder row;
    row.exact("s", p.s()).exact("p", p.p()).exact("b", p.b()).exact("lambda", p.lambda());
    add_run_columns(row, *runs[k]);
    row.append_to(t);
    res.curves["trace_" + std::to_string(k)] = trace_curve(runs[k]->fine);
  }
  return res;
}

// ------------------------------------------------------------ critical upper

ExperimentResult exp_critical_upper(const ExperimentConfig& cfg) {
  for (const ParamPoint& pt : cfg.points) {
    if (!is_critical(cfg.n, pt)) throw ConfigError("critical_upper needs p = 2*_s");
    checked_params(cfg.n, pt);
  }
  const int n = cfg.n;
  const Defaults fam{4.0, n == 1 ? 8193 : (n == 2 ? 513 : 129)};
  const GridPair g = resolve_pair(cfg, fam, Domain::half_space);
  const int padding = n == 3 ? 2 : 4;
  ExperimentResult res = make_result(cfg, g);

  const Profile phi = [n](const Point& y) { return smooth_bump(n, y); };
  std::vector<double> hs;
  for (double h : cfg.h_values) {
    const double r = 1.0 / h;
    bool fits = h >= 1.0 && 1.0 - r >= g.fine.lo(0) && 1.0 + r <= g.fine.hi(0);
    for (int a = 1; a < n; ++a) fits = fits && r <= g.fine.hi(a);
    // At least four coarse cells across the support radius.
    fits = fits && r >= 4.0 * g.coarse.h();
    if (fits) {
      hs.push_back(h);
    } else {
      res.notes.push_back("h=" + std::to_string(h) + " dropped: support escapes or is unresolved");
    }
  }
  if (hs.empty()) throw ConfigError("no admissible h values for the cutoff family");

  Table& fam_t = res.tables["cutoff_family"];
  Table& rate_t = res.tables["rate_fit"];
  for (std::size_t k = 0; k < cfg.points.size(); ++k) {
    const Params p = checked_params(n, cfg.points[k]);
    const QuotientSpec with = QuotientSpec::from(p);
    QuotientSpec without = with;
    without.lambda = 0.0;
    struct Row {
      double gap_f, gap_c, q0_f, q0_c, ql_f, ql_c, hardy_f, hardy_c, form_f, form_c, exact, frozen;
    };
    std::vector<Row> rows(hs.size());
    parallel_for(hs.size(), [&](std::size_t i) {
      const TrialFunction uf = translated_cutoff_family(g.fine, phi, hs[i]);
      const TrialFunction uc = translated_cutoff_family(g.coarse, phi, hs[i]);
      Row& r = rows[i];
      r.q0_f = rayleigh_quotient(uf, without, padding);
      r.q0_c = rayleigh_quotient(uc, without, padding);
      r.ql_f = rayleigh_quotient(uf, with, padding);
      r.ql_c = rayleigh_quotient(uc, with, padding);
      r.gap_f = r.ql_f - r.q0_f;
      r.gap_c = r.ql_c - r.q0_c;
      r.hardy_f = hardy_term(uf, p.s());
      r.hardy_c = hardy_term(uc, p.s());
      r.form_f = fourier_form(uf, p.s(), {padding});
      r.form_c = fourier_form(uc, p.s(), {padding});
      // x_1 = 1 + y_1/h maps the Hardy term to h^{2s-n} int (h+y_1)^{-2s} phi^2;
      // freezing the weight at e_1 leaves h^{-n} int phi^2.
      r.exact = std::pow(hs[i], 2.0 * p.s() - n) * weighted_profile_integral(n, p.s(), hs[i], phi);
      r.frozen = std::pow(hs[i], -n) * weighted_profile_integral(n, 0.0, 1.0, phi);
    });
    Curve gap_curve{"h", "gap", {}};
    std::vector<double> lx;
    std::vector<double> ly_f;
    std::vector<double> ly_c;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const Row& r = rows[i];
      const double ratio_f = p.lambda() * r.hardy_f / r.form_f;
      const double ratio_c = p.lambda() * r.hardy_c / r.form_c;
      const double fz_f = std::abs(r.hardy_f - r.frozen) / r.hardy_f;
      const double fz_c = std::abs(r.hardy_c - r.frozen) / r.hardy_c;
      RowBuilder row;
      row.exact("lambda", p.lambda())
          .exact("h", hs[i])
          .num("quotient_lambda", r.ql_f, half_diff(r.ql_f, r.ql_c))
          .num("quotient_zero", r.q0_f, half_diff(r.q0_f, r.q0_c))
          .num("gap", r.gap_f, half_diff(r.gap_f, r.gap_c))
          .num("lambda_term_over_form", ratio_f, half_diff(ratio_f, ratio_c))
          .num("hardy_term", r.hardy_f, half_diff(r.hardy_f, r.hardy_c))
          .exact("hardy_exact", r.exact)
          .num("hardy_exact_rel_diff", std::abs(r.hardy_f - r.exact) / r.exact,
               half_diff(std::abs(r.hardy_f - r.exact), std::abs(r.hardy_c - r.exact)) / r.exact)
          .exact("frozen_weight", r.frozen)
          .num("frozen_rel_diff", fz_f, half_diff(fz_f, fz_c));
      row.append_to(fam_t);
      gap_curve.points.emplace_back(hs[i], r.gap_f);
      if (r.gap_f != 0.0 && r.gap_c != 0.0) {
        lx.push_back(std::log(hs[i]));
        ly_f.push_back(std::log(std::abs(r.gap_f)));
        ly_c.push_back(std::log(std::abs(r.gap_c)));
      }
    }
    res.curves["gap_" + std::to_string(k)] = gap_curve;
    if (lx.size() >= 2) {
      const auto slope = [&](const std::vector<double>& y) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
          mx += lx[i];
          my += y[i];
        }
        mx /= lx.size();
        my /= lx.size();
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
          sxy += (lx[i] - mx) * (y[i] - my);
          sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        return sxy / sxx;
      };
      const double sf = slope(ly_f);
      const double sc = slope(ly_c);
      RowBuilder row;
      row.exact("lambda", p.lambda())
          .num("log_gap_slope", sf, half_diff(sf, sc))
          .exact("expected_slope", -2.0 * p.s());
      row.append_to(rate_t);
    }
  }

  // Half-space vs whole-space minimization for lambda <= 0.
  const double s0 = cfg.points.front().s;
  std::vector<double> lams = cfg.compare_lambdas;
  if (lams.empty()) lams = {0.0, -0.5 * hardy_constant(s0)};
  for (double l : lams) {
    if (l > 0.0) throw ConfigError("half/whole-space comparison needs lambda <= 0");
  }
  ExperimentConfig std_cfg = cfg;
  std_cfg.grid = GridSpec{};
  const GridPair hg = resolve_pair(std_cfg, standard_defaults(n), Domain::half_space);
  const GridPair wg = resolve_pair(std_cfg, standard_defaults(n), Domain::whole_space);
  const QuotientSpec whole_spec{n, s0, critical_p(n, s0), 0.0, 0.0};
  std::vector<std::optional<PairRun>> runs(lams.size() + 1);
  parallel_for(runs.size(), [&](std::size_t k) {
    if (k == lams.size()) {
      runs[k] = run_pair(whole_spec, wg, cfg.optimizer);
    } else {
      QuotientSpec spec = whole_spec;
      spec.lambda = lams[k];
      runs[k] = run_pair(spec, hg, cfg.optimizer, centered_initial_field);
    }
  });
  const PairRun& whole = *runs.back();
  const double wq = whole.fine.best_quotient;
  const double wu = half_diff(wq, whole.coarse.best_quotient);
  Table& hw = res.tables["half_vs_whole"];
  for (std::size_t k = 0; k < lams.size(); ++k) {
    const PairRun& hr = *runs[k];
    const double hq = hr.fine.best_quotient;
    const double hu = half_diff(hq, hr.coarse.best_quotient);
    const double rel_f = (hq - wq) / wq;
    const double rel_c = (hr.coarse.best_quotient - whole.coarse.best_quotient) /
                         whole.coarse.best_quotient;
    RowBuilder row;
    row.exact("s", s0)
        .exact("lambda", lams[k])
        .num("half_space", hq, hu)
        .num("whole_space", wq, wu)
        .num("rel_diff", rel_f, half_diff(rel_f, rel_c))
        .text("half_termination", to_string(hr.fine.termination))
        .text("whole_termination", to_string(whole.fine.termination));
    row.append_to(hw);
  }
  return res;
}

// ------------------------------------------------------------ BN

ExperimentResult exp_bn(const ExperimentConfig& cfg) {
  const int n = cfg.n;
  for (const ParamPoint& pt : cfg.points) {
    if (!is_critical(n, pt)) throw ConfigError("bn experiment needs p = 2*_s");
    if (!(n >= 4.0 * pt.s)) throw ConfigError("bn experiment needs n >= 4s");
    if (!(pt.lambda > 0.0)) throw ConfigError("bn experiment needs 0 < lambda < H_s");
    checked_params(n, pt);
  }
  const GridPair hg = resolve_pair(cfg, standard_defaults(n), Domain::half_space);
  const GridPair wg = resolve_pair(cfg, standard_defaults(n), Domain::whole_space);
  ExperimentResult res = make_result(cfg, hg);

  struct Job {
    double s;
    double lambda;
    std::string role;
  };
  std::vector<Job> jobs;
  std::vector<double> orders;
  for (const ParamPoint& pt : cfg.points) {
    jobs.push_back({pt.s, pt.lambda, "claim"});
    if (cfg.controls) {
      jobs.push_back({pt.s, 0.05 * hardy_constant(pt.s), "control_small_lambda"});
      jobs.push_back({pt.s, -0.5 * hardy_constant(pt.s), "control_negative_lambda"});
    }
    if (std::find(orders.begin(), orders.end(), pt.s) == orders.end()) orders.push_back(pt.s);
  }
  std::vector<std::optional<PairRun>> half(jobs.size());
  std::vector<std::optional<PairRun>> whole(orders.size());
  parallel_for(jobs.size() + orders.size(), [&](std::size_t k) {
    if (k < jobs.size()) {
      const QuotientSpec spec{n, jobs[k].s, critical_p(n, jobs[k].s), 0.0, jobs[k].lambda};
      half[k] = run_pair(spec, hg, cfg.optimizer);
    } else {
      const double s = orders[k - jobs.size()];
      whole[k - jobs.size()] = run_pair({n, s, critical_p(n, s), 0.0, 0.0}, wg, cfg.optimizer);
    }
  });
  Table& t = res.tables["gap"];
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const std::size_t w =
        static_cast<std::size_t>(std::find(orders.begin(), orders.end(), jobs[k].s) - orders.begin());
    const PairRun& hr = *half[k];
    const PairRun& wr = *whole[w];
    const double hq = hr.fine.best_quotient;
    const double hu = half_diff(hq, hr.coarse.best_quotient);
    const double wq = wr.fine.best_quotient;
    const double wu = half_diff(wq, wr.coarse.best_quotient);
    const double gap = hq - wq;
    RowBuilder row;
    row.text("role", jobs[k].role)
        .exact("s", jobs[k].s)
        .exact("lambda", jobs[k].lambda)
        .num("half_space", hq, hu)
        .num("sobolev_disc", wq, wu)
        .num("gap", gap, hu + wu)
        .text("gap_below_uncertainty", gap < -(hu + wu) ? "yes" : "no");
    add_run_columns(row, hr);
    row.append_to(t);
    res.curves["trace_" + std::to_string(k)] = trace_curve(hr.fine);
  }
  return res;
}

// ------------------------------------------------------------ conjecture

ExperimentResult exp_conjecture(const ExperimentConfig& cfg) {
  const int n = cfg.n;
  for (const ParamPoint& pt : cfg.points) {
    if (!(2.0 * pt.s < n && n < 4.0 * pt.s)) {
      throw ConfigError("conjecture window needs 2s < n < 4s");
    }
    if (!is_critical(n, pt)) throw ConfigError("conjecture probe needs p = 2*_s");
    if (!(pt.lambda > 0.0)) throw ConfigError("conjecture probe needs 0 < lambda < H_s");
    checked_params(n, pt);
  }
  const double h = cfg.grid.L1 > 0.0 && cfg.grid.m > 0 ? cfg.grid.L1 / (cfg.grid.m - 1)
                                                       : (n == 1 ? 1.0 / 64.0 : 0.25);
  std::vector<double> boxes = cfg.boxes;
  if (boxes.empty()) {
    boxes = n == 1 ? std::vector<double>{16.0, 32.0, 64.0}
                   : (n == 2 ? std::vector<double>{8.0, 16.0, 32.0}
                             : std::vector<double>{4.0, 8.0, 16.0});
  }
  if (boxes.size() < 3) throw ConfigError("conjecture probe needs at least three boxes");
  std::vector<GridPair> hgs;
  std::vector<GridPair> wgs;
  for (double L : boxes) {
    ExperimentConfig c = cfg;
    c.grid = GridSpec{L, static_cast<int>(std::lround(L / h)) + 1, 0};
    if ((c.grid.m - 1) % 2 != 0) throw ConfigError("box length must be an even number of cells");
    hgs.push_back(resolve_pair(c, {}, Domain::half_space));
    wgs.push_back(resolve_pair(c, {}, Domain::whole_space));
  }
  ExperimentResult res = make_result(cfg, hgs.back());
  res.exploratory = true;
  res.notes.push_back("exploratory: trends are reported, not asserted");

  Table& t = res.tables["box_trend"];
  Table& summary = res.tables["trend_summary"];
  for (std::size_t k = 0; k < cfg.points.size(); ++k) {
    const ParamPoint& pt = cfg.points[k];
    const QuotientSpec hs{n, pt.s, critical_p(n, pt.s), 0.0, pt.lambda};
    const QuotientSpec ws{n, pt.s, critical_p(n, pt.s), 0.0, 0.0};
    std::vector<std::optional<PairRun>> hr(boxes.size());
    std::vector<std::optional<PairRun>> wr(boxes.size());
    parallel_for(2 * boxes.size(), [&](std::size_t j) {
      if (j < boxes.size()) {
        hr[j] = run_pair(hs, hgs[j], cfg.optimizer);
      } else {
        wr[j - boxes.size()] = run_pair(ws, wgs[j - boxes.size()], cfg.optimizer);
      }
    });
    std::vector<MinimizerReport> trend;
    Curve qc{"L1", "quotient", {}};
    for (std::size_t j = 0; j < boxes.size(); ++j) {
      const double hq = hr[j]->fine.best_quotient;
      const double hu = half_diff(hq, hr[j]->coarse.best_quotient);
      const double wq = wr[j]->fine.best_quotient;
      const double wu = half_diff(wq, wr[j]->coarse.best_quotient);
      RowBuilder row;
      row.exact("s", pt.s).exact("lambda", pt.lambda).exact("L1", boxes[j]);
      row.num("sobolev_disc", wq, wu).num("gap", hq - wq, hu + wu);
      add_run_columns(row, *hr[j]);
      row.append_to(t);
      trend.push_back(hr[j]->fine);
      qc.points.emplace_back(boxes[j], hq);
    }
    res.curves["quotient_vs_box_" + std::to_string(k)] = qc;
    RowBuilder row;
    row.exact("s", pt.s)
        .exact("lambda", pt.lambda)
        .integer("boxes", static_cast<long>(boxes.size()))
        .text("box_trend", to_string(classify_run(trend)));
    row.append_to(summary);
  }
  return res;
}

// ------------------------------------------------------------ Sloane

ExperimentResult exp_sloane(const ExperimentConfig& cfg) {
  const int n = cfg.n;
  if (n < 2) throw ConfigError("sloane probe needs n >= 2");
  for (const ParamPoint& pt : cfg.points) {
    if (!(pt.s > 0.5 && pt.s < 1.0)) throw ConfigError("sloane probe needs 1/2 < s < 1");
    if (!is_critical(n, pt)) throw ConfigError("sloane probe needs p = 2*_s");
    const double H = hardy_constant(pt.s);
    if (std::abs(pt.lambda - H) > 1e-12 * H) throw ConfigError("sloane probe needs lambda = H_s");
  }
  const GridPair g = resolve_pair(cfg, standard_defaults(n), Domain::half_space);
  ExperimentResult res = make_result(cfg, g);
  Table& et = res.tables["suite_energy"];
  Table& mt = res.tables["minimization"];
  Table& ct = res.tables["control"];
  for (std::size_t k = 0; k < cfg.points.size(); ++k) {
    const double s = cfg.points[k].s;
    const double H = hardy_constant(s);
    const double R = 0.25 * (g.fine.hi(0) - g.fine.lo(0));
    std::vector<std::pair<std::string, std::pair<TrialFunction, TrialFunction>>> fields;
    const auto sf = smooth_suite(g.fine, cfg.seed);
    const auto sc = smooth_suite(g.coarse, cfg.seed);
    for (std::size_t i = 0; i < sf.size(); ++i) {
      fields.push_back({sf[i].label, {sf[i].u, sc[i].u}});
    }
    const std::vector<double> deltas{1.0, 0.6, 0.35, 0.2, 0.1};
    for (double d : deltas) {
      fields.push_back({"wall_delta_" + std::to_string(d),
                        {wall_power_family(g.fine, s, d, R), wall_power_family(g.coarse, s, d, R)}});
    }
    struct Vals {
      double form_f, form_c, hardy_f, hardy_c;
    };
    std::vector<Vals> vals(fields.size());
    parallel_for(fields.size(), [&](std::size_t i) {
      const auto& [uf, uc] = fields[i].second;
      vals[i] = {fourier_form(uf, s), fourier_form(uc, s), hardy_term(uf, s), hardy_term(uc, s)};
    });
    double min_control = INFINITY;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const Vals& v = vals[i];
      const double ef = v.form_f - H * v.hardy_f;
      const double ec = v.form_c - H * v.hardy_c;
      RowBuilder row;
      row.exact("s", s)
          .text("field", fields[i].first)
          .num("energy", ef, half_diff(ef, ec))
          .num("form_over_hardy", v.form_f / (H * v.hardy_f),
               half_diff(v.form_f / (H * v.hardy_f), v.form_c / (H * v.hardy_c)))
          .text("positive", ef > 0.0 ? "yes" : "no");
      row.append_to(et);
      if (cfg.controls && fields[i].first.rfind("wall", 0) == 0) {
        const double cf = v.form_f - 1.02 * H * v.hardy_f;
        const double cc = v.form_c - 1.02 * H * v.hardy_c;
        min_control = std::min(min_control, cf);
        RowBuilder crow;
        crow.exact("s", s)
            .exact("lambda", 1.02 * H)
            .text("field", fields[i].first)
            .num("energy", cf, half_diff(cf, cc))
            .text("negative", cf < 0.0 ? "yes" : "no");
        crow.append_to(ct);
      }
    }
    if (cfg.controls && min_control >= 0.0) {
      res.notes.push_back("control lambda=1.02 H_s: no wall-family energy became negative; the "
                          "family's Hardy quotient stays above 1.02 at this resolution");
    }
    const QuotientSpec spec{n, s, critical_p(n, s), 0.0, H};
    const PairRun pr = run_pair(spec, g, cfg.optimizer);
    double trace_min = INFINITY;
    for (double q : pr.fine.quotient_trace) trace_min = std::min(trace_min, q);
    RowBuilder row;
    row.exact("s", s).exact("lambda", H).num("trace_min", trace_min, 0.0);
    add_run_columns(row, pr);
    row.append_to(mt);
    res.curves["trace_" + std::to_string(k)] = trace_curve(pr.fine);
  }
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "subcritical") return exp_subcritical(cfg);
  if (cfg.experiment == "critical_upper") return exp_critical_upper(cfg);
  if (cfg.experiment == "bn") return exp_bn(cfg);
  if (cfg.experiment == "conjecture") return exp_conjecture(cfg);
  if (cfg.experiment == "sloane") return exp_sloane(cfg);
  throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace hsfrac
