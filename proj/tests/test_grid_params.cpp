#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fnls/grid.hpp"
#include "fnls/params.hpp"

using namespace fnls;

TEST(Params, CriticalExponents) {
  const auto p = make_params(2, 0.8, 0.8, 1.0);
  EXPECT_DOUBLE_EQ(p.p, 1.0 + 4.0 * 0.8 / 2.0);
  EXPECT_DOUBLE_EQ(p.theta, p.p + 1.0);
  EXPECT_TRUE(p.valid);
  EXPECT_FALSE(p.undamped());
}

TEST(Params, AlphaRange) {
  EXPECT_DOUBLE_EQ(alpha_lower_bound(2), 2.0 / 3.0);
  EXPECT_FALSE(make_params(2, 0.6, 0.8, 1.0).valid);  // below d/(2d-1)
  EXPECT_FALSE(make_params(2, 1.0, 0.8, 1.0).valid);
  EXPECT_FALSE(make_params(1, 0.8, 0.5, 1.0).valid);  // d = 1 has an empty range
  EXPECT_THROW(make_params(3, 0.8, 0.8, 1.0), std::invalid_argument);
  EXPECT_THROW(make_params(2, 0.8, -0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(make_params(2, 0.8, 0.8, -1.0), std::invalid_argument);
  EXPECT_THROW(make_params(2, 0.0, 0.8, 1.0), std::invalid_argument);
}

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(Grid(48, 10.0, 1), std::invalid_argument);
  EXPECT_THROW(Grid(64, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(Grid(64, 10.0, 3), std::invalid_argument);
}

TEST(Grid, CoordinatesCenteredAndReflectionExact) {
  const Grid g(16, 8.0, 2);
  const auto x = g.coordinates();
  EXPECT_EQ(x[8], 0.0);
  for (int j = 1; j < 16; ++j) EXPECT_EQ(x[16 - j], -x[j]);
  for (std::size_t f = 0; f < g.size(); ++f) EXPECT_EQ(g.reflect(g.reflect(f)), f);
  EXPECT_EQ(g.reflect(g.flatten({8, 8})), g.flatten({8, 8}));
}

TEST(Grid, FrequenciesWraparound) {
  const Grid g(8, 2.0 * std::numbers::pi, 1);
  const auto k = g.wavenumbers();
  const int expected[] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int j = 0; j < 8; ++j) EXPECT_EQ(k[j], expected[j]);
  EXPECT_NEAR(g.frequencies()[3], 3.0, 1e-15);
  EXPECT_EQ(g.mode_index({-1, 0}), 7u);
  EXPECT_THROW(g.mode_index({4, 0}), std::invalid_argument);
}

TEST(Grid, NormSquaredInTwoDimensions) {
  const Grid g(8, 2.0 * std::numbers::pi, 2);
  EXPECT_NEAR(g.xi_norm_sq()[g.mode_index({1, -2})], 5.0, 1e-14);
  EXPECT_DOUBLE_EQ(g.cell_volume(), std::pow(2.0 * std::numbers::pi / 8, 2));
}
