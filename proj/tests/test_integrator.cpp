#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fnls/error.hpp"
#include "fnls/functionals.hpp"
#include "fnls/integrator.hpp"
#include "fnls/profile.hpp"
#include "test_util.hpp"

using namespace fnls;

namespace {

Field gaussian(const GridPtr& grid, Complex amp = 1.0) {
  InitialProfile p;
  p.amplitude = amp;
  return sample_profile(p, grid);
}

}  // namespace

TEST(Nonlinear, PreservesModulus) {
  std::mt19937_64 rng(31);
  const auto grid = make_grid(32, 10.0, 2);
  const Field u = testutil::white_field(grid, rng);
  const Field v = nonlinear_substep(u, 0.37, make_params(2, 0.8, 0.5, 1.0));
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(std::abs(v[i]), std::abs(u[i]), 1e-14);
  // Phase advances by dt |u|^{p-1}.
  const double expected = 0.37 * std::pow(std::abs(u[5]), 1.6);
  EXPECT_NEAR(std::arg(v[5] / u[5]), std::remainder(expected, 2.0 * M_PI), 1e-12);
}

TEST(Strang, ZeroStepIsIdentityNegativeThrows) {
  const auto grid = make_grid(32, 12.0, 1);
  const auto u = gaussian(grid);
  const auto params = make_params(1, 0.8, 0.5, 0.5);
  const Field same = strang_step(u, 0.0, params, StepperConfig{});
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(same[i], u[i]);
  EXPECT_THROW(strang_step(u, -0.1, params, StepperConfig{}), IrreversibleTimeError);
}

TEST(Strang, SecondOrderInTime) {
  // n = 128 under-resolves the focusing pulse and the order drops to ~1.5.
  const auto grid = make_grid(256, 30.0, 1);
  StepperConfig base;
  base.t_end = 0.5;
  const auto rep =
      convergence_study(gaussian(grid, 1.5), make_params(1, 0.8, 0.5, 0.5), {0.05, 0.025, 0.0125, 0.00625}, base);
  EXPECT_TRUE(rep.conclusive);
  EXPECT_NEAR(rep.order, 2.0, 0.1);
  ASSERT_EQ(rep.pairwise_orders.size(), 2u);
}

TEST(Strang, ConvergenceStudyValidatesSteps) {
  const auto grid = make_grid(16, 10.0, 1);
  const auto params = make_params(1, 0.8, 0.5, 0.5);
  EXPECT_THROW(convergence_study(gaussian(grid), params, {0.1, 0.05}, {}), std::invalid_argument);
  EXPECT_THROW(convergence_study(gaussian(grid), params, {0.1, 0.2, 0.05}, {}), std::invalid_argument);
}

TEST(Evolve, RecordsStrideAndClippedFinalStep) {
  const auto grid = make_grid(64, 24.0, 2);
  StepperConfig sc;
  sc.dt = 0.03;
  sc.t_end = 0.5;
  sc.record_stride = 4;
  sc.snapshot_times = {0.0, 0.24};
  const auto traj = evolve(gaussian(grid), make_params(2, 0.8, 0.8, 1.0), sc);
  EXPECT_EQ(traj.status, RunStatus::completed);
  EXPECT_EQ(traj.steps, 17);  // 16 full steps + 0.02
  EXPECT_EQ(traj.records.size(), 6u);  // t = 0, 4 strided, final
  EXPECT_DOUBLE_EQ(traj.records.back().t, 0.5);
  EXPECT_NE(traj.snapshot_at(0.24), nullptr);
  EXPECT_EQ(traj.snapshot_at(0.25), nullptr);
  ASSERT_TRUE(traj.final_field.has_value());
}

TEST(Evolve, DampedMassDecreases) {
  const auto grid = make_grid(64, 24.0, 2);
  StepperConfig sc;
  sc.t_end = 2.0;
  const auto traj = evolve(gaussian(grid, 1.5), make_params(2, 0.8, 0.6, 1.0), sc);
  for (std::size_t i = 1; i < traj.records.size(); ++i) {
    EXPECT_LT(traj.records[i].mass_sq, traj.records[i - 1].mass_sq);
    EXPECT_GT(traj.records[i].strichartz_acc, traj.records[i - 1].strichartz_acc);
  }
}

TEST(Evolve, UndampedConservesMassWithoutDealiasing) {
  const auto grid = make_grid(64, 24.0, 2);
  StepperConfig sc;
  sc.t_end = 1.0;
  sc.dealias = false;
  const auto traj = evolve(gaussian(grid), make_params(2, 0.8, 0.8, 0.0), sc);
  const double m0 = traj.records.front().mass_sq;
  for (const auto& r : traj.records) EXPECT_NEAR(r.mass_sq, m0, 1e-12 * m0);
}

TEST(Evolve, UndampedLargeMassBlowsUp) {
  const auto grid = make_grid(128, 16.0, 2);
  StepperConfig sc;
  sc.dt = 1e-3;
  sc.t_end = 1.0;
  sc.record_stride = 10;
  sc.blowup_threshold = 5.0;
  const auto traj = evolve(gaussian(grid, 3.0), make_params(2, 0.9, 0.9, 0.0), sc);
  EXPECT_EQ(traj.status, RunStatus::blowup_detected);
  EXPECT_LT(traj.records.back().t, 1.0);
  EXPECT_GE(std::sqrt(traj.records.back().h_alpha_sq), 5.0 * std::sqrt(traj.records.front().h_alpha_sq));
}

TEST(Evolve, RejectsBadInput) {
  const auto grid = make_grid(16, 10.0, 1);
  const auto params = make_params(1, 0.8, 0.5, 0.5);
  StepperConfig sc;
  sc.dt = 0.0;
  EXPECT_THROW(evolve(gaussian(grid), params, sc), std::invalid_argument);
  Field bad(grid);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(evolve(bad, params, StepperConfig{}), std::invalid_argument);
}

TEST(Evolve, AdaptiveStepHalves) {
  const auto grid = make_grid(64, 24.0, 2);
  StepperConfig sc;
  sc.dt = 0.2;
  sc.t_end = 1.0;
  sc.adaptive_tolerance = 1e-3;
  const auto traj = evolve(gaussian(grid, 2.0), make_params(2, 0.8, 0.8, 1.0), sc);
  EXPECT_EQ(traj.status, RunStatus::completed);
  EXPECT_LT(traj.final_dt, sc.dt);
  EXPECT_DOUBLE_EQ(traj.records.back().t, 1.0);
}

TEST(LogLogSlope, PowerLaw) {
  const std::vector<double> x{1.0, 2.0, 4.0}, y{3.0, 12.0, 48.0};
  EXPECT_NEAR(log_log_slope(x, y), 2.0, 1e-14);
  EXPECT_THROW(log_log_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
}
