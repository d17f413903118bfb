#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fnls/functionals.hpp"
#include "fnls/integrator.hpp"
#include "fnls/profile.hpp"
#include "oracles/direct_sums.hpp"
#include "test_util.hpp"

using namespace fnls;

namespace {

std::vector<Complex> raw(const Field& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

TEST(Functionals, SeminormsMatchDirectSummation) {
  std::mt19937_64 rng(23);
  const double L = 9.0;
  const auto grid = make_grid(32, L, 1);
  const Field u = testutil::random_field(grid, rng, 6);
  for (double beta : {0.0, 0.3, 0.8, 1.3}) {
    const double expected = oracle::seminorm_sq(raw(u), L, beta);
    EXPECT_NEAR(fractional_seminorm_sq(u, beta), expected, 1e-11 * expected) << beta;
  }
  EXPECT_NEAR(mass(u).squared, mass_sq_spectral(u), 1e-12 * mass(u).squared);
}

TEST(Functionals, EnergyMatchesDirectSummation) {
  std::mt19937_64 rng(29);
  const double L = 12.0;
  const auto grid = make_grid(32, L, 1);
  const auto params = make_params(1, 0.8, 0.5, 1.0);
  const Field u = testutil::random_field(grid, rng, 5);
  const double expected = oracle::energy_1d(raw(u), L, 0.8);
  EXPECT_NEAR(energy(u, params), expected, 1e-11 * std::abs(expected));
  const auto rec = make_record(u, params, 0.0);
  EXPECT_NEAR(rec.energy, expected, 1e-11 * std::abs(expected));
  EXPECT_TRUE(std::isnan(rec.mass_resid));
}

TEST(Functionals, LpNormOfGaussian) {
  // ∫ exp(-q|x|²/2) dx = 2π/q in 2-D.
  const auto grid = make_grid(64, 24.0, 2);
  const auto u = sample_profile(InitialProfile{}, grid);
  EXPECT_NEAR(lp_norm_pow(u, 3.6), 2.0 * std::numbers::pi / 3.6, 1e-12);
}

TEST(EnergyRate, UndampedIsZero) {
  const auto grid = make_grid(64, 24.0, 2);
  const auto u = sample_profile(InitialProfile{}, grid);
  const auto r = energy_identity_rhs(u, make_params(2, 0.8, 0.8, 0.0));
  EXPECT_EQ(r.total(), 0.0);
}

TEST(EnergyRate, ImaginaryPartVanishesForRealData) {
  const auto grid = make_grid(64, 24.0, 2);
  InitialProfile p;
  p.amplitude = 1.7;
  const auto r = energy_identity_rhs(sample_profile(p, grid), make_params(2, 0.8, 0.6, 1.0));
  EXPECT_LE(std::abs(r.coupling_im), 1e-12);
  EXPECT_GT(std::abs(r.coupling_re), 1e-3);
  EXPECT_LT(r.dissipation, 0.0);
}

// A finite difference of E along the computed flow singles out the real part
// of the coupling term.
TEST(EnergyRate, RealPartMatchesFiniteDifference) {
  const auto grid = make_grid(256, 40.0, 1);
  const auto params = make_params(1, 0.8, 0.5, 0.5);
  InitialProfile prof;
  prof.amplitude = Complex{1.2, 0.6};
  const auto u0 = sample_profile(prof, grid);
  StepperConfig sc;
  sc.t_end = 0.3;
  sc.dt = 1e-3;
  const auto traj = evolve(u0, params, sc);
  ASSERT_EQ(traj.status, RunStatus::completed);
  const auto& recs = traj.records;
  const std::size_t k = recs.size() / 2;
  const double fd = (recs[k + 1].energy - recs[k - 1].energy) / (recs[k + 1].t - recs[k - 1].t);
  EXPECT_NEAR(fd, recs[k].energy_rate, 1e-4 * std::abs(recs[k].energy_rate));
}

TEST(Residuals, RequireIncreasingTime) {
  DiagnosticsRecord a, b;
  a.t = b.t = 1.0;
  EXPECT_THROW(mass_identity_residual(a, b, make_params(2, 0.8, 0.8, 1.0)), std::invalid_argument);
  EXPECT_THROW(energy_identity_residual(a, b), std::invalid_argument);
}

TEST(Strichartz, TrapezoidAccumulation) {
  std::vector<DiagnosticsRecord> recs(3);
  recs[0].t = 0.0, recs[0].lp_theta = 1.0;
  recs[1].t = 0.5, recs[1].lp_theta = 3.0;
  recs[2].t = 1.5, recs[2].lp_theta = 1.0;
  const auto s = strichartz_accumulate(recs);
  EXPECT_DOUBLE_EQ(s.integral[1], 1.0);
  EXPECT_DOUBLE_EQ(s.total(), 3.0);
  EXPECT_DOUBLE_EQ(s.norm(3.0), std::cbrt(3.0));
  EXPECT_THROW(strichartz_accumulate(std::span(recs).first(1)), std::invalid_argument);
}
