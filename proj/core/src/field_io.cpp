#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hsfrac/error.hpp"
#include "hsfrac/fields.hpp"

namespace hsfrac {
namespace {

constexpr const char* kHeader = "n,x1_min,x1_max,xp_min,xp_max,m1,m2,m3";

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(strip(cell));
  return out;
}

}  // namespace

void write_field_csv(std::ostream& os, const TrialFunction& u) {
  const Grid& g = u.grid();
  const bool has_t = g.n() > 1;
  os << kHeader << "\n";
  os << g.n() << ',' << g17(g.lo(0)) << ',' << g17(g.hi(0)) << ','
     << g17(has_t ? g.lo(1) : 0.0) << ',' << g17(has_t ? g.hi(1) : 0.0) << ',' << g.m(0) << ','
     << g.m(1) << ',' << g.m(2) << "\n";
  os << "value\n";
  for (double x : u.values()) os << g17(x) << "\n";
}

TrialFunction read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || strip(line) != kHeader) {
    throw ConfigError("field file: missing header '" + std::string(kHeader) + "'");
  }
  if (!std::getline(is, line)) throw ConfigError("field file: missing grid row");
  const auto cells = split(line);
  if (cells.size() != 8) throw ConfigError("field file: grid row needs 8 cells");
  int n = 0;
  double x1_min = 0.0;
  double x1_max = 0.0;
  Index3 m{1, 1, 1};
  try {
    n = std::stoi(cells[0]);
    x1_min = std::stod(cells[1]);
    x1_max = std::stod(cells[2]);
    for (int a = 0; a < 3; ++a) m[a] = std::stoi(cells[5 + a]);
  } catch (const std::exception&) {
    throw ConfigError("field file: unparsable grid row");
  }
  if (n < 1 || n > 3 || m[0] < 2) throw ConfigError("field file: invalid grid row");
  const double h = (x1_max - x1_min) / (m[0] - 1);
  const Domain dom = x1_min == 0.0 ? Domain::half_space : Domain::whole_space;
  Grid grid = [&] {
    try {
      return Grid(n, h, m, dom);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("field file: ") + e.what());
    }
  }();
  if (!std::getline(is, line) || strip(line) != "value") {
    throw ConfigError("field file: missing 'value' header");
  }
  std::vector<double> v;
  v.reserve(grid.size());
  while (std::getline(is, line)) {
    line = strip(line);
    if (line.empty()) continue;
    try {
      v.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw ConfigError("field file: unparsable value '" + line + "'");
    }
  }
  if (v.size() != grid.size()) throw ConfigError("field file: value count does not match grid");
  try {
    return TrialFunction(grid, std::move(v));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("field file: ") + e.what());
  }
}

void save_field(const std::string& path, const TrialFunction& u) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write field file " + path);
  write_field_csv(os, u);
}

TrialFunction load_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open field file " + path);
  return read_field_csv(is);
}

}  // namespace hsfrac
