#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include "hsfrac/error.hpp"
#include "hsfrac/experiments.hpp"
#include "json.hpp"

namespace hsfrac {
namespace {

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return g17(*d);
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  return csv_field(std::get<std::string>(c));
}

// One lock per output directory.
std::mutex& directory_lock(const std::string& dir) {
  static std::mutex registry_mutex;
  static std::map<std::string, std::unique_ptr<std::mutex>> registry;
  std::lock_guard<std::mutex> lock(registry_mutex);
  const std::string key = std::filesystem::weakly_canonical(dir).string();
  auto& slot = registry[key];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << content;
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << csv_field(columns[k]);
  os << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << render(row[k]);
    os << "\r\n";
  }
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) return k;
  }
  throw DomainError("no column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* l = std::get_if<long>(&c)) return static_cast<double>(*l);
  throw DomainError("column '" + name + "' is not numeric");
}

const std::string& Table::text(std::size_t row, const std::string& name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  throw DomainError("column '" + name + "' is not text");
}

RowBuilder& RowBuilder::num(const std::string& name, double value, double unc) {
  cells_.emplace_back(name, value);
  cells_.emplace_back(name + "_unc", unc);
  return *this;
}

RowBuilder& RowBuilder::integer(const std::string& name, long value) {
  cells_.emplace_back(name, value);
  cells_.emplace_back(name + "_unc", 0L);
  return *this;
}

RowBuilder& RowBuilder::text(const std::string& name, std::string value) {
  cells_.emplace_back(name, std::move(value));
  return *this;
}

void RowBuilder::append_to(Table& t) const {
  if (t.columns.empty()) {
    for (const auto& [name, cell] : cells_) t.columns.push_back(name);
  } else {
    if (t.columns.size() != cells_.size()) throw DomainError("row shape does not match table");
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      if (t.columns[k] != cells_[k].first) throw DomainError("row columns do not match table");
    }
  }
  std::vector<Cell> row;
  for (const auto& [name, cell] : cells_) row.push_back(cell);
  t.rows.push_back(std::move(row));
}

std::string result_json(const ExperimentResult& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["experiment"] = r.experiment;
  j["exploratory"] = r.exploratory;
  j["provenance"] = {{"config_hash", r.config_hash},
                     {"resolution_pair", {r.resolution_pair.first, r.resolution_pair.second}},
                     {"seed", r.seed}};
  ordered_json tables = ordered_json::object();
  for (const auto& [name, t] : r.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json obj = ordered_json::object();
      for (std::size_t k = 0; k < row.size(); ++k) {
        std::visit([&](const auto& v) { obj[t.columns[k]] = v; }, row[k]);
      }
      rows.push_back(obj);
    }
    tables[name] = rows;
  }
  j["tables"] = tables;
  ordered_json curves = ordered_json::object();
  for (const auto& [name, c] : r.curves) curves[name] = "curves/" + name + ".csv";
  j["curves"] = curves;
  j["notes"] = r.notes;
  return j.dump(2);
}

void emit_result(const ExperimentResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "tables");
  fs::create_directories(fs::path(dir) / "curves");
  std::lock_guard<std::mutex> lock(directory_lock(dir));
  for (const auto& [name, t] : r.tables) {
    std::ostringstream os;
    t.write_csv(os);
    write_file(fs::path(dir) / "tables" / (name + ".csv"), os.str());
  }
  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  for (const auto& [name, c] : r.curves) {
    std::ostringstream os;
    os << csv_field(c.x_label) << "," << csv_field(c.y_label) << "\r\n";
    for (const auto& [x, y] : c.points) os << g17(x) << "," << g17(y) << "\r\n";
    write_file(fs::path(dir) / "curves" / (name + ".csv"), os.str());
    manifest.push_back({{"name", name},
                        {"file", "curves/" + name + ".csv"},
                        {"x", c.x_label},
                        {"y", c.y_label},
                        {"points", c.points.size()}});
  }
  write_file(fs::path(dir) / "manifest.json", manifest.dump(2) + "\n");
  write_file(fs::path(dir) / "result.json", result_json(r) + "\n");
}

}  // namespace hsfrac
