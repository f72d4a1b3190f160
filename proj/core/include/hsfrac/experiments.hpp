#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hsfrac/constants.hpp"
#include "hsfrac/grid.hpp"
#include "hsfrac/optimizer.hpp"

namespace hsfrac {

struct ParamPoint {
  double s = 0.4;
  std::optional<double> p;  // empty: critical exponent
  double lambda = 0.0;
};

struct GridSpec {
  double L1 = 0.0;  // 0: experiment default
  int m = 0;        // fine node count along x_1; 0: experiment default
  int coarse_m = 0; // 0: (m-1)/2 + 1
};

struct ExperimentConfig {
  std::string experiment;
  int n = 1;
  std::vector<ParamPoint> points;
  GridSpec grid;
  OptimizerOptions optimizer;
  std::string output_dir;
  std::uint64_t seed = 1;
  std::vector<double> h_values{1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<double> compare_lambdas;  // critical_upper half/whole-space check
  std::vector<double> boxes;            // conjecture box lengths L1
  bool controls = true;
  // canonical_config(*this), filled by the parsers.
  std::string canonical;
};

extern const std::vector<std::string> kExperimentIds;

// Parses and validates a JSON document. Throws ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
// Default configuration for an experiment id.
ExperimentConfig default_config(const std::string& id);

// Effective configuration as JSON with sorted keys; output_dir excluded.
std::string canonical_config(const ExperimentConfig& cfg);

// FNV-1a 64-bit hash, hex encoded.
std::string fnv1a_hex(const std::string& data);

using Cell = std::variant<double, long, std::string>;

// Row-major table. Numeric columns are paired with a "<name>_unc" column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& os) const;
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  const std::string& text(std::size_t row, const std::string& name) const;
};

// Incremental builder enforcing the value/uncertainty pairing.
class RowBuilder {
 public:
  RowBuilder& num(const std::string& name, double value, double unc);
  RowBuilder& exact(const std::string& name, double value) { return num(name, value, 0.0); }
  RowBuilder& integer(const std::string& name, long value);
  RowBuilder& text(const std::string& name, std::string value);
  void append_to(Table& t) const;

 private:
  std::vector<std::pair<std::string, Cell>> cells_;
};

struct Curve {
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
};

struct ExperimentResult {
  std::string experiment;
  bool exploratory = false;
  std::map<std::string, Table> tables;
  std::map<std::string, Curve> curves;
  std::vector<std::string> notes;
  std::string config_hash;
  std::pair<int, int> resolution_pair{0, 0};
  std::uint64_t seed = 0;
};

ExperimentResult exp_subcritical(const ExperimentConfig& cfg);
ExperimentResult exp_critical_upper(const ExperimentConfig& cfg);
ExperimentResult exp_bn(const ExperimentConfig& cfg);
ExperimentResult exp_conjecture(const ExperimentConfig& cfg);
ExperimentResult exp_sloane(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Writes tables/<name>.csv, curves/<name>.csv, manifest.json and
// result.json under dir. Writes to one directory are serialized.
void emit_result(const ExperimentResult& r, const std::string& dir);
std::string result_json(const ExperimentResult& r);

// Runs the invariant suite, printing one line per check. True if all pass.
bool run_selftest(std::ostream& os);

}  // namespace hsfrac
