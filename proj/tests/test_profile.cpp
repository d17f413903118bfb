#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fnls/functionals.hpp"
#include "fnls/profile.hpp"

using namespace fnls;

TEST(Profile, KindNamesRoundTrip) {
  for (auto k : {ProfileKind::gaussian, ProfileKind::super_gaussian, ProfileKind::single_mode, ProfileKind::ring}) {
    EXPECT_EQ(profile_kind_from_string(to_string(k)), k);
  }
  EXPECT_EQ(to_string(ProfileKind::super_gaussian), "super-gaussian");
  EXPECT_THROW(profile_kind_from_string("sech"), std::invalid_argument);
}

TEST(Profile, GaussianMassMatchesClosedForm) {
  // ∫ exp(-|x|²/w²) dx = π w² in 2-D.
  const auto grid = make_grid(64, 24.0, 2);
  InitialProfile p;
  p.width = 1.3;
  const auto u = sample_profile(p, grid);
  EXPECT_NEAR(mass(u).squared, std::numbers::pi * 1.3 * 1.3, 1e-12);
}

TEST(Profile, TruncationIsRejected) {
  const auto grid = make_grid(64, 8.0, 1);
  InitialProfile p;
  p.width = 2.0;
  EXPECT_THROW(sample_profile(p, grid), std::invalid_argument);
}

TEST(Profile, RingNeedsTwoDimensions) {
  InitialProfile p;
  p.kind = ProfileKind::ring;
  EXPECT_THROW(sample_profile(p, make_grid(64, 24.0, 1)), std::invalid_argument);
  p.radius = 3.0;
  const auto u = sample_profile(p, make_grid(64, 24.0, 2));
  EXPECT_GT(mass(u).squared, 0.0);
}

TEST(Profile, SingleModeIsPlaneWave) {
  const auto grid = make_grid(16, 2.0 * std::numbers::pi, 1);
  InitialProfile p;
  p.kind = ProfileKind::single_mode;
  p.mode = {2, 0};
  const auto u = sample_profile(p, grid);
  const auto x = grid->coordinates();
  for (int j = 0; j < 16; ++j) EXPECT_NEAR(std::abs(u[j] - std::polar(1.0, 2.0 * x[j])), 0.0, 1e-14);
}

TEST(Profile, RadialSymmetryIsExact) {
  const auto grid = make_grid(32, 12.0, 2);
  InitialProfile p;
  p.kind = ProfileKind::super_gaussian;
  p.order = 1.7;
  const auto u = sample_profile(p, grid);
  for (std::size_t f = 0; f < grid->size(); ++f) EXPECT_EQ(u[f], u[grid->reflect(f)]);
}
