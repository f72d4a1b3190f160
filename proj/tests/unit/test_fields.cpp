#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hsfrac/error.hpp"
#include "hsfrac/fields.hpp"
#include "hsfrac/grid.hpp"
#include "hsfrac/suite.hpp"
#include "hsfrac/trial_function.hpp"

using namespace hsfrac;

TEST(Grid, HalfSpaceLayout) {
  const Grid g = Grid::half_space(2, 8.0, 33, 17);
  EXPECT_DOUBLE_EQ(g.h(), 0.25);
  EXPECT_EQ(g.lo(0), 0.0);
  EXPECT_DOUBLE_EQ(g.hi(0), 8.0);
  EXPECT_DOUBLE_EQ(g.lo(1), -2.0);
  EXPECT_DOUBLE_EQ(g.hi(1), 2.0);
  EXPECT_EQ(g.size(), 33u * 17u);
  for (std::size_t i = 0; i < g.size(); i += 37) EXPECT_EQ(g.index(g.multi(i)), i);
  EXPECT_TRUE(g.on_boundary({0, 5, 0}));
  EXPECT_TRUE(g.on_boundary({5, 16, 0}));
  EXPECT_FALSE(g.on_boundary({5, 5, 0}));
}

TEST(Grid, StandardResolutions) {
  EXPECT_EQ(Grid::standard(1).m(0), 4097);
  EXPECT_EQ(Grid::standard(2).m(1), 257);
  EXPECT_EQ(Grid::standard(3).m(2), 65);
  EXPECT_DOUBLE_EQ(Grid::standard(3).hi(0), 16.0);
}

TEST(Grid, RefineCoarsenRoundTrip) {
  const Grid g = Grid::half_space(1, 4.0, 17, 17);
  EXPECT_EQ(g.refined().m(0), 33);
  EXPECT_EQ(g.refined().coarsened(), g);
  EXPECT_THROW(Grid::half_space(1, 4.0, 7, 7), DomainError);
}

TEST(TrialFunction, RejectsBoundaryValues) {
  const Grid g = Grid::half_space(1, 1.0, 9, 9);
  std::vector<double> v(9, 0.0);
  v[4] = 1.0;
  EXPECT_NO_THROW(TrialFunction(g, v));
  v[0] = 1e-300;
  EXPECT_THROW(TrialFunction(g, v), DomainError);
  v[0] = 0.0;
  v[3] = std::nan("");
  EXPECT_THROW(TrialFunction(g, v), DomainError);
}

TEST(TrialFunction, SampleZeroesBoundary) {
  const Grid g = Grid::whole_space(2, 4.0, 17);
  const TrialFunction u = TrialFunction::sample(g, [](const Point&) { return 1.0; });
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(u[i], g.on_boundary(g.multi(i)) ? 0.0 : 1.0);
  }
  EXPECT_DOUBLE_EQ((u - u).max_abs(), 0.0);
  EXPECT_TRUE((u - u).is_zero());
  EXPECT_DOUBLE_EQ(u.scaled(-2.0).max_abs(), 2.0);
}

TEST(Fields, BubbleValueAndGuards) {
  EXPECT_DOUBLE_EQ(bubble_value(1, 0.25, {0.0, 0, 0}), 1.0);
  EXPECT_NEAR(bubble_value(3, 0.5, {1.0, 0, 0}), 0.5, 1e-15);
  const Grid g = Grid::half_space(1, 8.0, 65, 65);
  EXPECT_THROW(bubble(g, {0.0, 0, 0}, 1.0, 0.3), DomainError);
  EXPECT_NO_THROW(bubble(g, {4.0, 0, 0}, 1.0, 0.3));
}

TEST(Fields, BoxCutoffProperties) {
  const Grid g = Grid::half_space(2, 10.0, 41, 41);
  EXPECT_DOUBLE_EQ(box_cutoff(g, {5.0, 0.0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(box_cutoff(g, {1.0, 0.0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(box_cutoff(g, {0.0, 1.0, 0}), 0.0);
  const double mid = box_cutoff(g, {0.5, 0.0, 0});
  EXPECT_GT(mid, 0.0);
  EXPECT_LT(mid, 1.0);
}

TEST(Fields, TranslatedCutoffFamily) {
  const Grid g = Grid::half_space(1, 4.0, 257, 257);
  const Profile phi = [](const Point& y) { return smooth_bump(1, y); };
  const TrialFunction u = translated_cutoff_family(g, phi, 4.0);
  // Peak at x = 1, support (0.75, 1.25).
  EXPECT_DOUBLE_EQ(u[64], 1.0);
  EXPECT_EQ(u[47], 0.0);
  EXPECT_GT(u[49], 0.0);
  EXPECT_EQ(u[81], 0.0);
  EXPECT_THROW(translated_cutoff_family(g, phi, 0.5), DomainError);
}

TEST(Fields, DilateSubsamples) {
  const Grid g = Grid::half_space(1, 8.0, 65, 65);
  const TrialFunction u = TrialFunction::sample(g, [](const Point& x) { return x[0] * (8 - x[0]); });
  const TrialFunction d = dilate(u, 2);
  EXPECT_EQ(d.grid().m(0), 33);
  EXPECT_DOUBLE_EQ(d.grid().h(), g.h());
  for (int i = 0; i < 33; ++i) EXPECT_EQ(d[i], u[2 * i]);
  const TrialFunction back = undilate(d, 2, g);
  // Linear interpolation of a quadratic with |f''| = 2 over spacing 2h:
  // error at most (2h)^2 / 4.
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(back[i], u[i], 0.015625 + 1e-12);
    if (i % 2 == 0) {
      EXPECT_EQ(back[i], u[i]);
    }
  }
}

TEST(Fields, TranslateTransverse) {
  const Grid g = Grid::half_space(2, 8.0, 33, 33);
  const TrialFunction u = smooth_suite(g, 3, 1)[0].u;
  const TrialFunction t = translate_transverse(u, 1, 2);
  const TrialFunction back = translate_transverse(t, 1, -2);
  double diff = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) diff = std::max(diff, std::abs(back[i] - u[i]));
  EXPECT_LT(diff, 1e-15);
}

TEST(FieldIO, RoundTripIsExact) {
  for (const Grid& g : {Grid::half_space(1, 8.0, 33, 33), Grid::half_space(2, 8.0, 17, 9),
                        Grid::whole_space(3, 4.0, 9)}) {
    const TrialFunction u = TrialFunction::sample(
        g, [](const Point& x) { return std::sin(1.3 * x[0] + 0.7 * x[1] - x[2]) / 3.0; });
    std::stringstream ss;
    write_field_csv(ss, u);
    const TrialFunction v = read_field_csv(ss);
    ASSERT_EQ(v.grid(), g);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(u[i], v[i]);
  }
}

TEST(FieldIO, MalformedFilesAreConfigErrors) {
  std::stringstream bad_header("n,x1\n");
  EXPECT_THROW(read_field_csv(bad_header), ConfigError);
  std::stringstream short_data("n,x1_min,x1_max,xp_min,xp_max,m1,m2,m3\n1,0,8,0,0,9,1,1\nvalue\n0\n");
  EXPECT_THROW(read_field_csv(short_data), ConfigError);
  std::stringstream nonzero_wall(
      "n,x1_min,x1_max,xp_min,xp_max,m1,m2,m3\n1,0,8,0,0,9,1,1\nvalue\n1\n0\n0\n0\n0\n0\n0\n0\n0\n");
  EXPECT_THROW(read_field_csv(nonzero_wall), ConfigError);
}

TEST(Suite, DeterministicAndResolutionIndependent) {
  const Grid fine = Grid::half_space(2, 16.0, 129, 129);
  const Grid coarse = Grid::half_space(2, 16.0, 65, 65);
  const auto a = smooth_suite(fine, 11);
  const auto b = smooth_suite(fine, 11);
  const auto c = smooth_suite(coarse, 11);
  ASSERT_EQ(a.size(), 12u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].label, b[k].label);
    for (std::size_t i = 0; i < fine.size(); ++i) ASSERT_EQ(a[k].u[i], b[k].u[i]);
    // Coarse nodes coincide with every other fine node.
    for (int i = 0; i < 65; ++i) {
      for (int j = 0; j < 65; ++j) {
        ASSERT_NEAR(c[k].u[coarse.index({i, j, 0})], a[k].u[fine.index({2 * i, 2 * j, 0})], 1e-14);
      }
    }
    EXPECT_FALSE(a[k].u.is_zero());
  }
  const auto other = smooth_suite(fine, 12);
  double diff = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) diff += std::abs(other[0].u[i] - a[0].u[i]);
  EXPECT_GT(diff, 0.0);
}

TEST(Suite, WallGapRespected) {
  const Grid g = Grid::half_space(1, 16.0, 257, 257);
  for (const auto& m : smooth_suite(g, 5, 12, 2.0)) {
    for (int i = 0; i <= 32; ++i) EXPECT_EQ(m.u[i], 0.0) << m.label;
  }
}
