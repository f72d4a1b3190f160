#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hsfrac/error.hpp"
#include "hsfrac/experiments.hpp"
#include "json.hpp"

namespace hsfrac {

const std::vector<std::string> kExperimentIds{"subcritical", "critical_upper", "bn", "conjecture",
                                              "sloane"};

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

double number(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError("'" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

int integer(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' in " + where + " must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_array()) throw ConfigError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigError("'" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

ParamPoint parse_point(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  reject_unknown(j, {"s", "p", "critical", "lambda", "lambda_over_hardy"}, where);
  ParamPoint pt;
  if (!j.contains("s")) throw ConfigError(where + " needs 's'");
  pt.s = number(j, "s", where);
  if (!(pt.s > 0.0 && pt.s < 1.0)) throw ConfigError(where + ": s must lie in (0,1)");
  const bool critical = j.contains("critical") && j.at("critical").get<bool>();
  if (j.contains("p") && critical) throw ConfigError(where + ": give either 'p' or 'critical'");
  if (j.contains("p")) pt.p = number(j, "p", where);
  if (j.contains("lambda") && j.contains("lambda_over_hardy")) {
    throw ConfigError(where + ": give either 'lambda' or 'lambda_over_hardy'");
  }
  if (j.contains("lambda")) pt.lambda = number(j, "lambda", where);
  if (j.contains("lambda_over_hardy")) {
    pt.lambda = number(j, "lambda_over_hardy", where) * hardy_constant(pt.s);
  }
  if (!std::isfinite(pt.lambda)) throw ConfigError(where + ": lambda must be finite");
  return pt;
}

OptimizerOptions parse_optimizer(const json& j) {
  if (!j.is_object()) throw ConfigError("'optimizer' must be an object");
  reject_unknown(j,
                 {"max_iters", "tol", "armijo", "max_halvings", "padding", "precondition",
                  "initial_step", "max_step"},
                 "optimizer");
  OptimizerOptions o;
  if (j.contains("max_iters")) o.max_iters = integer(j, "max_iters", "optimizer");
  if (j.contains("tol")) o.tol = number(j, "tol", "optimizer");
  if (j.contains("armijo")) o.armijo = number(j, "armijo", "optimizer");
  if (j.contains("max_halvings")) o.max_halvings = integer(j, "max_halvings", "optimizer");
  if (j.contains("padding")) o.padding = integer(j, "padding", "optimizer");
  if (j.contains("precondition")) o.precondition = j.at("precondition").get<bool>();
  if (j.contains("initial_step")) o.initial_step = number(j, "initial_step", "optimizer");
  if (j.contains("max_step")) o.max_step = number(j, "max_step", "optimizer");
  if (o.max_iters < 1 || !(o.tol > 0.0) || !(o.armijo > 0.0 && o.armijo < 1.0) ||
      o.max_halvings < 1 || o.padding < 1 || !(o.initial_step > 0.0) ||
      !(o.max_step >= o.initial_step)) {
    throw ConfigError("optimizer options out of range");
  }
  return o;
}

}  // namespace

std::string canonical_config(const ExperimentConfig& cfg) {
  // nlohmann::json keeps object keys sorted, which fixes the dump order.
  json pts = json::array();
  for (const ParamPoint& p : cfg.points) {
    pts.push_back({{"s", p.s}, {"p", p.p ? json(*p.p) : json("critical")}, {"lambda", p.lambda}});
  }
  const OptimizerOptions& o = cfg.optimizer;
  json j{{"experiment", cfg.experiment},
         {"n", cfg.n},
         {"points", pts},
         {"grid", {{"L1", cfg.grid.L1}, {"m", cfg.grid.m}, {"coarse_m", cfg.grid.coarse_m}}},
         {"optimizer",
          {{"max_iters", o.max_iters},
           {"tol", o.tol},
           {"armijo", o.armijo},
           {"max_halvings", o.max_halvings},
           {"padding", o.padding},
           {"precondition", o.precondition},
           {"initial_step", o.initial_step},
           {"max_step", o.max_step}}},
         {"seed", cfg.seed},
         {"h_values", cfg.h_values},
         {"compare_lambdas", cfg.compare_lambdas},
         {"boxes", cfg.boxes},
         {"controls", cfg.controls}};
  return j.dump();
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    reject_unknown(j,
                   {"experiment", "n", "s", "p", "critical", "lambda", "lambda_over_hardy",
                    "points", "grid", "optimizer", "output_dir", "seed", "h_values",
                    "compare_lambdas_over_hardy", "boxes", "controls"},
                   "config");
    ExperimentConfig cfg;
    if (!j.contains("experiment") || !j.at("experiment").is_string()) {
      throw ConfigError("config needs a string 'experiment'");
    }
    cfg.experiment = j.at("experiment").get<std::string>();
    bool known = false;
    for (const auto& id : kExperimentIds) known = known || id == cfg.experiment;
    if (!known) throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    if (j.contains("n")) cfg.n = integer(j, "n", "config");
    if (cfg.n < 1 || cfg.n > 3) throw ConfigError("n must be 1, 2 or 3");

    if (j.contains("points") && j.contains("s")) {
      throw ConfigError("give either 'points' or a single point, not both");
    }
    if (j.contains("points")) {
      if (!j.at("points").is_array() || j.at("points").empty()) {
        throw ConfigError("'points' must be a non-empty array");
      }
      int k = 0;
      for (const json& p : j.at("points")) {
        cfg.points.push_back(parse_point(p, "points[" + std::to_string(k++) + "]"));
      }
    } else if (j.contains("s")) {
      json single = json::object();
      for (const char* key : {"s", "p", "critical", "lambda", "lambda_over_hardy"}) {
        if (j.contains(key)) single[key] = j.at(key);
      }
      cfg.points.push_back(parse_point(single, "config"));
    } else {
      cfg.points = default_config(cfg.experiment).points;
    }

    if (j.contains("grid")) {
      const json& g = j.at("grid");
      if (!g.is_object()) throw ConfigError("'grid' must be an object");
      reject_unknown(g, {"L1", "m", "coarse_m"}, "grid");
      if (g.contains("L1")) cfg.grid.L1 = number(g, "L1", "grid");
      if (g.contains("m")) cfg.grid.m = integer(g, "m", "grid");
      if (g.contains("coarse_m")) cfg.grid.coarse_m = integer(g, "coarse_m", "grid");
      if (cfg.grid.L1 < 0.0 || (cfg.grid.m != 0 && cfg.grid.m < 8) ||
          (cfg.grid.coarse_m != 0 && cfg.grid.coarse_m < 8)) {
        throw ConfigError("grid needs L1 > 0 and at least 8 nodes");
      }
    }
    if (j.contains("optimizer")) cfg.optimizer = parse_optimizer(j.at("optimizer"));
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
      cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("h_values")) cfg.h_values = numbers(j, "h_values");
    if (j.contains("boxes")) cfg.boxes = numbers(j, "boxes");
    if (j.contains("controls")) cfg.controls = j.at("controls").get<bool>();
    if (j.contains("compare_lambdas_over_hardy")) {
      cfg.compare_lambdas = numbers(j, "compare_lambdas_over_hardy");
      for (double& l : cfg.compare_lambdas) l *= hardy_constant(cfg.points.front().s);
    }
    cfg.canonical = canonical_config(cfg);
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a wrongly typed entry: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

ExperimentConfig default_config(const std::string& id) {
  ExperimentConfig cfg;
  cfg.experiment = id;
  if (id == "subcritical") {
    const double h = hardy_constant(0.4);
    cfg.points = {{0.4, 3.0, -10.0}, {0.4, 3.0, 0.0}, {0.4, 3.0, 0.5 * h}};
  } else if (id == "critical_upper") {
    cfg.n = 2;
    cfg.points = {{0.45, std::nullopt, 0.5 * hardy_constant(0.45)}};
  } else if (id == "bn") {
    cfg.n = 2;
    cfg.points = {{0.45, std::nullopt, 0.8 * hardy_constant(0.45)}};
  } else if (id == "conjecture") {
    cfg.points = {{0.35, std::nullopt, 0.9 * hardy_constant(0.35)}};
  } else if (id == "sloane") {
    cfg.n = 2;
    cfg.points = {{0.75, std::nullopt, hardy_constant(0.75)}};
  } else {
    throw ConfigError("unknown experiment '" + id + "'");
  }
  cfg.canonical = canonical_config(cfg);
  return cfg;
}

}  // namespace hsfrac
