#include "hsfrac/grid.hpp"

#include <cmath>

#include "hsfrac/error.hpp"

namespace hsfrac {

std::string to_string(Domain d) {
  return d == Domain::half_space ? "half_space" : "whole_space";
}

Grid::Grid(int n, double h, Index3 m, Domain domain) : n_(n), h_(h), m_(m), domain_(domain) {
  if (n < 1 || n > 3) throw DomainError("grid dimension must be 1, 2 or 3");
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid spacing must be positive");
  size_ = 1;
  for (int a = 0; a < 3; ++a) {
    if (a < n) {
      if (m_[a] < 8) throw DomainError("grid needs at least 8 nodes per axis");
      size_ *= static_cast<std::size_t>(m_[a]);
    } else {
      m_[a] = 1;
    }
  }
}

Grid Grid::half_space(int n, double L1, int m1, int m_transverse) {
  if (!(L1 > 0.0) || m1 < 8) throw DomainError("half-space box needs L1 > 0 and m1 >= 8");
  return Grid(n, L1 / (m1 - 1), {m1, m_transverse, m_transverse}, Domain::half_space);
}

Grid Grid::whole_space(int n, double L, int m) {
  if (!(L > 0.0) || m < 8) throw DomainError("whole-space box needs L > 0 and m >= 8");
  return Grid(n, L / (m - 1), {m, m, m}, Domain::whole_space);
}

Grid Grid::standard(int n) {
  switch (n) {
    case 1:
      return half_space(1, 64.0, 4097, 1);
    case 2:
      return half_space(2, 32.0, 257, 257);
    case 3:
      return half_space(3, 16.0, 65, 65);
    default:
      throw DomainError("grid dimension must be 1, 2 or 3");
  }
}

double Grid::cell_volume() const { return std::pow(h_, n_); }

double Grid::lo(int axis) const {
  if (axis == 0 && domain_ == Domain::half_space) return 0.0;
  return -0.5 * (m(axis) - 1) * h_;
}

Index3 Grid::multi(std::size_t idx) const {
  Index3 i{0, 0, 0};
  i[2] = static_cast<int>(idx % static_cast<std::size_t>(m(2)));
  idx /= static_cast<std::size_t>(m(2));
  i[1] = static_cast<int>(idx % static_cast<std::size_t>(m(1)));
  i[0] = static_cast<int>(idx / static_cast<std::size_t>(m(1)));
  return i;
}

Point Grid::point(std::size_t idx) const {
  const Index3 i = multi(idx);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < n_; ++a) x[a] = coord(a, i[a]);
  return x;
}

bool Grid::on_boundary(const Index3& i) const {
  for (int a = 0; a < n_; ++a) {
    if (i[a] == 0 || i[a] == m_[a] - 1) return true;
  }
  return false;
}

bool Grid::contains(const Point& x) const {
  for (int a = 0; a < n_; ++a) {
    if (x[a] < lo(a) || x[a] > hi(a)) return false;
  }
  return true;
}

bool Grid::strictly_inside(const Point& x) const {
  for (int a = 0; a < n_; ++a) {
    if (!(x[a] > lo(a) && x[a] < hi(a))) return false;
  }
  return true;
}

Grid Grid::refined() const {
  Index3 m = m_;
  for (int a = 0; a < n_; ++a) m[a] = 2 * m_[a] - 1;
  return Grid(n_, 0.5 * h_, m, domain_);
}

Grid Grid::coarsened() const {
  Index3 m = m_;
  for (int a = 0; a < n_; ++a) {
    if ((m_[a] - 1) % 2 != 0) throw DomainError("coarsening needs an even number of cells");
    m[a] = (m_[a] - 1) / 2 + 1;
  }
  return Grid(n_, 2.0 * h_, m, domain_);
}

}  // namespace hsfrac
