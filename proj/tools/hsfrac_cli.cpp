// hsfrac: command line front end for the fractional Hardy-Sobolev toolkit.
//
//   hsfrac constants  [--n N] [--sobolev] [--json|--csv]
//   hsfrac quadform   <field.csv> --s S [--padding P] [--json|--csv]
//   hsfrac minimize   [--config cfg.json] [--resolution m] [--out dir] [--json|--csv]
//   hsfrac experiment <id> [--config cfg.json] [--resolution m] [--out dir] [--json|--csv]
//   hsfrac selftest
//
// Exit status: 0 success, 1 invariant failure, 2 configuration error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hsfrac/constants.hpp"
#include "hsfrac/error.hpp"
#include "hsfrac/experiments.hpp"
#include "hsfrac/fields.hpp"
#include "hsfrac/optimizer.hpp"
#include "hsfrac/quadform.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInvariant = 1;
constexpr int kConfig = 2;

enum class Format { json, csv };

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_constants(int n, bool sobolev, Format f) {
  hsfrac::Table t;
  std::vector<ordered_json> rows;
  for (int k = 1; k <= 19; ++k) {
    const double s = k / 20.0;
    hsfrac::ConstantsTable c = hsfrac::constants_table(n, s);
    // The Sobolev constant needs n > 2s; other rows report NaN (null in JSON).
    if (sobolev && n > 2.0 * s) c.sobolev = hsfrac::sobolev_estimate(n, s);
    hsfrac::RowBuilder row;
    row.exact("s", c.s).integer("n", c.n).exact("hardy", c.hardy).exact("gagliardo", c.gagliardo)
        .exact("gamma", c.gamma);
    ordered_json j{{"s", c.s}, {"n", c.n}, {"hardy", c.hardy}, {"gagliardo", c.gagliardo},
                   {"gamma", c.gamma}};
    if (sobolev) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.num("sobolev", c.sobolev ? c.sobolev->value : nan,
              c.sobolev ? c.sobolev->uncertainty : nan);
      j["sobolev"] = c.sobolev ? ordered_json(c.sobolev->value) : ordered_json(nullptr);
      j["sobolev_unc"] = c.sobolev ? ordered_json(c.sobolev->uncertainty) : ordered_json(nullptr);
    }
    row.append_to(t);
    rows.push_back(std::move(j));
  }
  if (f == Format::csv) {
    t.write_csv(std::cout);
  } else {
    std::cout << ordered_json(rows).dump(2) << '\n';
  }
  return kOk;
}

int cmd_quadform(const std::string& path, double s, int padding, Format f) {
  const hsfrac::TrialFunction u = hsfrac::load_field(path);
  const hsfrac::FormReport r = hsfrac::form_report(u, s, {padding});
  if (f == Format::json) {
    std::cout << hsfrac::to_json(r) << '\n';
  } else {
    std::cout << "quantity,value\r\n";
    std::cout << "fourier," << fmt(r.fourier_value) << "\r\n";
    std::cout << "gagliardo," << fmt(r.gagliardo_value) << "\r\n";
    if (r.regional_value) std::cout << "regional," << fmt(*r.regional_value) << "\r\n";
    if (r.hardy_value) std::cout << "hardy," << fmt(*r.hardy_value) << "\r\n";
    std::cout << "cross_check_defect," << fmt(r.cross_check_defect) << "\r\n";
    if (r.decomposition_residual) {
      std::cout << "decomposition_residual," << fmt(*r.decomposition_residual) << "\r\n";
    }
  }
  bool ok = r.cross_check_defect <= r.tolerance;
  if (r.decomposition_residual) ok = ok && *r.decomposition_residual <= r.tolerance;
  if (!ok) std::cerr << "hsfrac: form cross-check exceeds tolerance " << r.tolerance << '\n';
  return ok ? kOk : kInvariant;
}

hsfrac::ExperimentConfig resolve_config(const std::string& id, const std::string& config_path,
                                        int resolution) {
  hsfrac::ExperimentConfig cfg =
      config_path.empty() ? hsfrac::default_config(id) : hsfrac::load_config(config_path);
  if (!id.empty() && cfg.experiment != id) {
    throw hsfrac::ConfigError("config names experiment '" + cfg.experiment + "', not '" + id + "'");
  }
  if (resolution > 0) {
    cfg.grid.m = resolution;
    cfg.canonical = hsfrac::canonical_config(cfg);
  }
  return cfg;
}

int cmd_minimize(const std::string& config_path, int resolution, const std::string& out,
                 Format f) {
  // Without a config the first subcritical default point is minimized.
  const hsfrac::ExperimentConfig cfg =
      resolve_config(config_path.empty() ? "subcritical" : "", config_path, resolution);
  if (cfg.points.empty()) throw hsfrac::ConfigError("config has no parameter point");
  const hsfrac::ParamPoint& pt = cfg.points.front();
  const hsfrac::Params params = pt.p ? hsfrac::Params::make(cfg.n, pt.s, *pt.p, pt.lambda)
                                     : hsfrac::Params::critical(cfg.n, pt.s, pt.lambda);
  const int m = cfg.grid.m > 0 ? cfg.grid.m : hsfrac::Grid::standard(cfg.n).m(0);
  const double L1 = cfg.grid.L1 > 0.0 ? cfg.grid.L1 : hsfrac::Grid::standard(cfg.n).hi(0);
  const hsfrac::Grid grid = hsfrac::Grid::half_space(cfg.n, L1, m, m);
  const hsfrac::MinimizerReport r = hsfrac::minimize_quotient(
      params, hsfrac::default_initial_field(grid, params.s()), cfg.optimizer);
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    hsfrac::save_field((std::filesystem::path(out) / "minimizer.csv").string(), r.final_field);
    std::ofstream trace(std::filesystem::path(out) / "trace.csv", std::ios::binary);
    hsfrac::write_trace_csv(trace, r);
    std::ofstream report(std::filesystem::path(out) / "report.json", std::ios::binary);
    report << hsfrac::to_json(r, false) << '\n';
  }
  if (f == Format::csv) {
    hsfrac::write_trace_csv(std::cout, r);
  } else {
    std::cout << hsfrac::to_json(r, false) << '\n';
  }
  return std::isfinite(r.best_quotient) ? kOk : kInvariant;
}

int cmd_experiment(const std::string& id, const std::string& config_path, int resolution,
                   const std::string& out, Format f) {
  const hsfrac::ExperimentConfig cfg = resolve_config(id, config_path, resolution);
  const hsfrac::ExperimentResult r = hsfrac::run_experiment(cfg);
  const std::string dir = !out.empty() ? out : (!cfg.output_dir.empty() ? cfg.output_dir : "");
  if (!dir.empty()) hsfrac::emit_result(r, dir);
  if (f == Format::csv) {
    for (const auto& [name, table] : r.tables) {
      std::cout << "# " << name << "\r\n";
      table.write_csv(std::cout);
    }
  } else {
    std::cout << hsfrac::result_json(r) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Hardy-Sobolev quadratic forms, quotients and experiments", "hsfrac"};
  app.require_subcommand(1);

  bool as_csv = false;
  bool as_json = false;
  const auto add_format = [&](CLI::App* sub) {
    auto* j = sub->add_flag("--json", as_json, "JSON output (default)");
    auto* c = sub->add_flag("--csv", as_csv, "CSV output");
    j->excludes(c);
  };

  int n = 1;
  bool sobolev = false;
  auto* constants = app.add_subcommand("constants", "Closed-form constants over s = 0.05..0.95");
  constants->add_option("--n", n, "Dimension")->check(CLI::Range(1, 3));
  constants->add_flag("--sobolev", sobolev, "Also estimate the Sobolev constant (slow)");
  add_format(constants);

  std::string field_path;
  double s = 0.5;
  int padding = 4;
  auto* quadform = app.add_subcommand("quadform", "Form report for a field file");
  quadform->add_option("field", field_path, "Field CSV file")->required();
  quadform->add_option("--s", s, "Fractional order")->check(CLI::Range(0.0, 1.0));
  quadform->add_option("--padding", padding, "Fourier zero-padding factor")
      ->check(CLI::PositiveNumber);
  add_format(quadform);

  std::string config_path;
  std::string out;
  int resolution = 0;
  auto* minimize = app.add_subcommand("minimize", "Single quotient minimization");
  minimize->add_option("--config", config_path, "JSON configuration");
  minimize->add_option("--resolution", resolution, "Nodes along x_1")->check(CLI::PositiveNumber);
  minimize->add_option("--out", out, "Output directory");
  add_format(minimize);

  std::string experiment_id;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment driver");
  experiment->add_option("id", experiment_id, "Experiment id")
      ->required()
      ->check(CLI::IsMember(hsfrac::kExperimentIds));
  experiment->add_option("--config", config_path, "JSON configuration");
  experiment->add_option("--resolution", resolution, "Nodes along x_1")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--out", out, "Output directory");
  add_format(experiment);

  auto* selftest = app.add_subcommand("selftest", "Invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kConfig;
  }

  const Format format = as_csv ? Format::csv : Format::json;
  try {
    if (*constants) return cmd_constants(n, sobolev, format);
    if (*quadform) return cmd_quadform(field_path, s, padding, format);
    if (*minimize) return cmd_minimize(config_path, resolution, out, format);
    if (*experiment) return cmd_experiment(experiment_id, config_path, resolution, out, format);
    if (*selftest) return hsfrac::run_selftest(std::cout) ? kOk : kInvariant;
  } catch (const hsfrac::ConfigError& e) {
    std::cerr << "hsfrac: config error: " << e.what() << '\n';
    return kConfig;
  } catch (const hsfrac::DomainError& e) {
    std::cerr << "hsfrac: invalid parameters: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "hsfrac: " << e.what() << '\n';
    return kInvariant;
  }
  return kConfig;
}
