#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/gn.hpp"
#include "fnls/integrator.hpp"
#include "fnls/params.hpp"
#include "fnls/profile.hpp"

namespace fnls {

/// Flags for an exponent pair (q, r) in dimension d. Infinite exponents are
/// passed as std::numeric_limits<double>::infinity().
///
/// The admissible set is the union of two clauses:
///   (1) (4d+2)/(2d-1) ≤ q ≤ ∞  and  2/q + (2d-1)/r ≤ d - ½
///   (2) 2 ≤ (4d+2)/(2d-1)      and  2/q + (2d-1)/r < d - ½
/// Clause (2) is applied literally: its first condition is a statement
/// about d only, so it admits every q ≥ 2 with strict inequality.
struct StrichartzExponents {
  int d = 2;
  double gamma = 0.0;
  double q = 2.0;
  double r = 2.0;
  double q_dual_prime = 0.0;   // q̃'
  double r_dual_prime = 0.0;   // r̃'
  bool clause1 = false;
  bool clause2 = false;
  bool admissible = false;
  /// 2/q + (2d-1)/r = d - ½ within rounding.
  bool boundary = false;
  /// 2/q + d/r = d/2 - γ within rounding.
  bool scaling_ok = false;
};

StrichartzExponents check_admissible(double q, double r, int d, double gamma = 0.0);

struct CriticalExponents {
  double theta = 0.0;
  /// 4α(1+p)/(d(p-1)), which must coincide with θ.
  double q_from_p = 0.0;
  /// Conjugate exponent from 1/q' = 1/q + (p-1)/θ.
  double q_prime = 0.0;
};

CriticalExponents critical_exponents(const ModelParams& params);

/// ‖u(t1) - S(t1-t0)u(t0)‖_{L²} from stored snapshots. Throws
/// std::invalid_argument if either snapshot is missing or t1 < t0.
double scattering_defect(const Trajectory& trajectory, double t0, double t1, const ModelParams& params);

struct ScatteringResult {
  std::vector<double> base_times;
  std::vector<double> horizons;
  std::vector<double> defects;
  /// Largest t0 whose defect is below the tolerance; its snapshot serves
  /// as the asymptotic state u₊ in the linear frame.
  std::optional<double> representative_time;
  std::optional<Field> asymptotic_state;
};

ScatteringResult scattering_series(const Trajectory& trajectory, const std::vector<double>& base_times,
                                   double horizon_factor, const ModelParams& params, double tolerance);

enum class SweepOutcome { decayed, bounded, grew, blowup, unstable };
std::string to_string(SweepOutcome outcome);

struct SweepResult {
  double alpha = 0.0;
  double s = 0.0;
  double a = 0.0;
  double mass_scale = 1.0;
  SweepOutcome outcome = SweepOutcome::bounded;
  RunStatus status = RunStatus::completed;
  double strichartz_acc = 0.0;
  double strichartz_norm = 0.0;
  double peak_h_alpha = 0.0;
  double initial_mass_sq = 0.0;
  double final_mass_sq = 0.0;
  double wall_time_s = 0.0;
};

/// Classifies a finished trajectory.
SweepOutcome classify(const Trajectory& trajectory);

struct SweepJob {
  ModelParams params;
  InitialProfile profile;
  GridPtr grid;
  StepperConfig stepper;
  double mass_scale = 1.0;
};

/// Runs one evolve per friction value, in parallel over `threads` workers.
/// `on_result`, when set, is called from one thread at a time as points
/// finish. The returned list is sorted by a.
std::vector<SweepResult> sweep_damping(const SweepJob& base, const std::vector<double>& a_values,
                                       int threads = 1,
                                       const std::function<void(const SweepResult&)>& on_result = {});

/// Strictly decreasing final accumulators over the points with a > 0 that
/// ran to completion. Vacuously true with fewer than two such points.
bool accumulators_decreasing(const std::vector<SweepResult>& results);

struct ThresholdProbeReport {
  bool hypotheses_ok = true;
  bool conclusive = false;
  /// Amplitude scales bracketing the crossover.
  double scale_below = 0.0;
  double scale_above = 0.0;
  /// Initial L² norms at the bracket ends and their midpoint.
  double mass_below = 0.0;
  double mass_above = 0.0;
  double crossover_mass = 0.0;
  int runs = 0;
  /// Threshold from the empirical coupling constant, if supplied.
  std::optional<double> predicted_beta;
};

/// True iff the recorded energy never rises by more than 10x the run's
/// energy-identity residual scale over any record interval.
bool energy_non_increasing(const Trajectory& trajectory);

/// Bisects the amplitude scale of `profile` between a run with
/// non-increasing energy (scale_lo) and one where the energy rises
/// (scale_hi). Inconclusive if the initial scales do not bracket.
ThresholdProbeReport mass_threshold_probe(const InitialProfile& profile, const GridPtr& grid,
                                          const ModelParams& params, const StepperConfig& stepper,
                                          double scale_lo, double scale_hi, int budget,
                                          const GNConstant* coupling = nullptr);

struct AprioriReport {
  double initial_mass = 0.0;
  double sup_mass = 0.0;
  /// initial_mass - sup_mass.
  double sup_mass_margin = 0.0;
  bool mass_monotone = true;
  /// (∫_0^T ‖(-Δ)^{s/2}u‖² dt)^{1/2} by trapezoid rule.
  double dissipation_norm = 0.0;
  /// ‖u0‖ / √(2a).
  double dissipation_bound = 0.0;
  double dissipation_margin = 0.0;
};

/// Checks the sup-in-time mass bound and the time-integrated dissipation
/// bound along a damped trajectory. Requires a > 0.
AprioriReport apriori_bounds_check(const Trajectory& trajectory, const ModelParams& params);

}  // namespace fnls
