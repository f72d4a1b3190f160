#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace hsfrac {

using Point = std::array<double, 3>;
using Index3 = std::array<int, 3>;

enum class Domain { half_space, whole_space };

std::string to_string(Domain d);

// Uniform isotropic tensor grid. Axis 0 is the normal coordinate x_1; on a
// half-space grid it spans [0, (m_0-1)h] and node i_0 = 0 sits on the wall.
// On a whole-space grid, and for every transverse axis, the axis is centered
// at 0. Storage is row-major with axis 0 slowest. Each used axis has m >= 8.
class Grid {
 public:
  Grid(int n, double h, Index3 m, Domain domain = Domain::half_space);

  // Half-space box [0, L1] x [-L', L']^{n-1} with m1 nodes along x_1 and the
  // same spacing transversally (m_t nodes per transverse axis).
  static Grid half_space(int n, double L1, int m1, int m_transverse);
  static Grid whole_space(int n, double L, int m);
  // n=1: [0,64] with 4097 nodes; n=2: [0,32]x[-16,16] with 257^2;
  // n=3: [0,16]x[-8,8]^2 with 65^3.
  static Grid standard(int n);

  int n() const { return n_; }
  double h() const { return h_; }
  Domain domain() const { return domain_; }
  int m(int axis) const { return axis < n_ ? m_[axis] : 1; }
  const Index3& extents() const { return m_; }
  std::size_t size() const { return size_; }
  double cell_volume() const;

  double lo(int axis) const;
  double hi(int axis) const { return lo(axis) + (m(axis) - 1) * h_; }
  double coord(int axis, int i) const { return lo(axis) + i * h_; }

  std::size_t index(const Index3& i) const {
    return (static_cast<std::size_t>(i[0]) * m(1) + i[1]) * m(2) + i[2];
  }
  Index3 multi(std::size_t idx) const;
  Point point(std::size_t idx) const;
  bool on_boundary(const Index3& i) const;
  bool contains(const Point& x) const;
  bool strictly_inside(const Point& x) const;

  // Same box, spacing h/2.
  Grid refined() const;
  // Same box, spacing 2h; requires every (m-1) even.
  Grid coarsened() const;

  bool operator==(const Grid& o) const {
    return n_ == o.n_ && h_ == o.h_ && m_ == o.m_ && domain_ == o.domain_;
  }

 private:
  int n_;
  double h_;
  Index3 m_;
  Domain domain_;
  std::size_t size_;
};

}  // namespace hsfrac
