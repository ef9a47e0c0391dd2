#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracspec/domain.hpp"
#include "fracspec/error.hpp"
#include "fracspec/grid.hpp"

using namespace fracspec;

TEST(Domain, AnalyticMeasures) {
  const Domain iv = Domain::interval(3.0);
  EXPECT_DOUBLE_EQ(iv.volume(), 3.0);
  EXPECT_DOUBLE_EQ(iv.boundary_measure(), 2.0);
  const Domain r = Domain::rectangle(2.0, 0.5);
  EXPECT_DOUBLE_EQ(r.volume(), 1.0);
  EXPECT_DOUBLE_EQ(r.boundary_measure(), 5.0);
  const Domain d = Domain::disk(2.0);
  EXPECT_DOUBLE_EQ(d.volume(), 4.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(d.boundary_measure(), 4.0 * std::numbers::pi);
  const Domain s = Domain::slit_square(2.0, 0.5);
  EXPECT_DOUBLE_EQ(s.volume(), 4.0);
  EXPECT_DOUBLE_EQ(s.boundary_measure(), 10.0);
}

TEST(Domain, RejectsBadParameters) {
  EXPECT_THROW(Domain::interval(-1.0), ConfigError);
  EXPECT_THROW(Domain::disk(0.0), ConfigError);
  EXPECT_THROW(Domain::slit_square(2.0, 1.0), ConfigError);
  EXPECT_THROW(domain_kind_from_string("annulus"), ConfigError);
}

TEST(Domain, StrictMembershipAndDistance) {
  const Domain d = Domain::disk(1.0);
  EXPECT_FALSE(d.contains({1.0, 0.0}));
  EXPECT_TRUE(d.contains({0.5, 0.5}));
  EXPECT_NEAR(d.distance_to_boundary({0.3, 0.4}), 0.5, 1e-15);
  const Domain s = Domain::slit_square(2.0, 0.5);
  EXPECT_FALSE(s.contains({0.25, 0.0}));
  EXPECT_TRUE(s.contains({0.75, 0.0}));
  EXPECT_NEAR(s.distance_to_boundary({0.0, 0.1}), 0.1, 1e-15);
  EXPECT_NEAR(s.distance_to_boundary({0.75, 0.0}), 0.25, 1e-15);
}

TEST(Grid, IntervalQuarterPiSpacing) {
  // B = 2 pi with 16 points gives spacing pi/4 and nodes pi/4 * {-1, 0, 1} inside.
  const Domain iv = Domain::interval(std::numbers::pi);
  const BoxGrid g = interior_points(iv, 2.0 * std::numbers::pi, 16);
  EXPECT_DOUBLE_EQ(g.spacing, std::numbers::pi / 4.0);
  ASSERT_EQ(g.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(g.coordinate(i)[0], (static_cast<double>(i) - 1.0) * std::numbers::pi / 4.0, 1e-15);
  }
}

TEST(Grid, DiskMatchesDirectEnumeration) {
  const Domain d = Domain::disk(1.0);
  const BoxGrid g = interior_points(d, 2.0, 8);
  ASSERT_DOUBLE_EQ(g.spacing, 0.5);
  std::size_t count = 0;
  for (int i = -4; i < 4; ++i) {
    for (int j = -4; j < 4; ++j) {
      if (0.25 * (i * i + j * j) < 1.0) ++count;
    }
  }
  EXPECT_EQ(g.size(), count);
  EXPECT_EQ(count, 9u);
  for (std::size_t k = 1; k < g.size(); ++k) EXPECT_LT(g.interior[k - 1], g.interior[k]);
}

TEST(Grid, SlitRemovesOnSlitNodes) {
  const Domain full = Domain::rectangle(2.0, 2.0);
  const Domain slit = Domain::slit_square(2.0, 0.5);
  const double b = 4.0 * slit.circumradius();
  const BoxGrid gf = interior_points(full, b, 64);
  const BoxGrid gs = interior_points(slit, b, 64);
  std::size_t on_slit = 0;
  for (std::size_t i = 0; i < gf.size(); ++i) {
    const Point x = gf.coordinate(i);
    if (x[1] == 0.0 && std::abs(x[0]) <= 0.5) ++on_slit;
  }
  EXPECT_GT(on_slit, 0u);
  EXPECT_EQ(gs.size(), gf.size() - on_slit);
}

TEST(Grid, ErrorPaths) {
  const Domain iv = Domain::interval(1.0);
  EXPECT_THROW(interior_points(iv, 0.9, 64), ConfigError);
  EXPECT_THROW(interior_points(iv, 2.0, 4), ConfigError);
  EXPECT_THROW(interior_points(iv, GridParams{64, 1.5}), ConfigError);
  EXPECT_EQ(interior_points(iv, 8.0, 16).size(), 1u);
  // The only node inside this square is the origin, which lies on the slit.
  EXPECT_THROW(interior_points(Domain::slit_square(0.1, 0.04), 8.0, 8), DegenerateGridError);
}

TEST(Grid, HalflineLayout) {
  const BoxGrid g = halfline_grid(40.0, 255);
  EXPECT_DOUBLE_EQ(g.spacing, 40.0 / 256.0);
  EXPECT_EQ(g.points_per_axis, 1024);
  EXPECT_GE(g.box_width(), 4.0 * 40.0);
  EXPECT_DOUBLE_EQ(g.coordinate(0)[0], g.spacing);
}
