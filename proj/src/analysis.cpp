#include "fnls/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fnls/functionals.hpp"
#include "fnls/semigroup.hpp"

namespace fnls {

namespace {

double reciprocal(double v) { return std::isinf(v) ? 0.0 : 1.0 / v; }

double conjugate(double v) {
  if (std::isinf(v)) return 1.0;
  if (!(v > 1.0)) return std::numeric_limits<double>::quiet_NaN();
  return v / (v - 1.0);
}

}  // namespace

StrichartzExponents check_admissible(double q, double r, int d, double gamma) {
  StrichartzExponents e;
  e.d = d;
  e.gamma = gamma;
  e.q = q;
  e.r = r;
  if (std::isnan(q) || std::isnan(r) || q < 2.0 || r < 2.0 || d < 1) return e;

  const double inv_q = reciprocal(q);
  const double inv_r = reciprocal(r);
  const double sum = 2.0 * inv_q + (2.0 * d - 1.0) * inv_r;
  const double bound = d - 0.5;
  const double tol = 1e-12 * bound;
  const double q_min = (4.0 * d + 2.0) / (2.0 * d - 1.0);

  e.boundary = std::abs(sum - bound) <= tol;
  e.clause1 = q >= q_min * (1.0 - 1e-12) && sum <= bound + tol;
  e.clause2 = 2.0 <= q_min && sum < bound - tol;
  e.admissible = e.clause1 || e.clause2;

  const double scaling = 2.0 * inv_q + d * inv_r;
  e.scaling_ok = std::abs(scaling - (0.5 * d - gamma)) <= 1e-12 * std::max(1.0, 0.5 * d);

  // Dual pair with q̃ = q and r̃ fixed by 2/q̃ + d/r̃ = d/2 + γ.
  const double inv_r_dual = (0.5 * d + gamma - 2.0 * inv_q) / d;
  const double r_dual = inv_r_dual > 0.0 ? 1.0 / inv_r_dual : std::numeric_limits<double>::quiet_NaN();
  e.q_dual_prime = conjugate(q);
  e.r_dual_prime = conjugate(r_dual);
  return e;
}

CriticalExponents critical_exponents(const ModelParams& params) {
  CriticalExponents c;
  c.theta = 4.0 * params.alpha / params.d + 2.0;
  c.q_from_p = 4.0 * params.alpha * (1.0 + params.p) / (params.d * (params.p - 1.0));
  c.q_prime = 1.0 / (1.0 / c.q_from_p + (params.p - 1.0) / c.theta);
  return c;
}

double scattering_defect(const Trajectory& trajectory, double t0, double t1, const ModelParams& params) {
  if (t1 < t0) throw std::invalid_argument("scattering defect needs t0 <= t1");
  const Field* u0 = trajectory.snapshot_at(t0);
  const Field* u1 = trajectory.snapshot_at(t1);
  if (u0 == nullptr) throw std::invalid_argument("no snapshot stored at t0 = " + std::to_string(t0));
  if (u1 == nullptr) throw std::invalid_argument("no snapshot stored at t1 = " + std::to_string(t1));
  if (t1 == t0) return 0.0;
  return l2_norm(*u1 - apply_semigroup(*u0, t1 - t0, params));
}

ScatteringResult scattering_series(const Trajectory& trajectory, const std::vector<double>& base_times,
                                   double horizon_factor, const ModelParams& params, double tolerance) {
  if (!(horizon_factor >= 1.0)) throw std::invalid_argument("horizon factor must be at least 1");
  ScatteringResult result;
  for (double t0 : base_times) {
    const double t1 = horizon_factor * t0;
    const double defect = scattering_defect(trajectory, t0, t1, params);
    result.base_times.push_back(t0);
    result.horizons.push_back(t1);
    result.defects.push_back(defect);
    if (defect < tolerance && (!result.representative_time || t0 > *result.representative_time)) {
      result.representative_time = t0;
      result.asymptotic_state = *trajectory.snapshot_at(t0);
    }
  }
  return result;
}

std::string to_string(SweepOutcome outcome) {
  switch (outcome) {
    case SweepOutcome::decayed: return "decayed";
    case SweepOutcome::bounded: return "bounded";
    case SweepOutcome::grew: return "grew";
    case SweepOutcome::blowup: return "blowup";
    case SweepOutcome::unstable: return "unstable";
  }
  return "unknown";
}

SweepOutcome classify(const Trajectory& trajectory) {
  if (trajectory.status == RunStatus::blowup_detected) return SweepOutcome::blowup;
  if (trajectory.status == RunStatus::instability) return SweepOutcome::unstable;
  const auto& first = trajectory.records.front();
  const auto& last = trajectory.records.back();
  if (last.h_alpha_sq > first.h_alpha_sq) return SweepOutcome::grew;
  if (last.mass_sq <= 0.5 * first.mass_sq) return SweepOutcome::decayed;
  return SweepOutcome::bounded;
}

namespace {

SweepResult run_point(const SweepJob& base, double a) {
  const auto start = std::chrono::steady_clock::now();
  const ModelParams params = make_params(base.params.d, base.params.alpha, base.params.s, a);
  InitialProfile profile = base.profile;
  profile.amplitude *= base.mass_scale;
  const Field u0 = sample_profile(profile, base.grid);
  const Trajectory traj = evolve(u0, params, base.stepper);

  SweepResult r;
  r.alpha = params.alpha;
  r.s = params.s;
  r.a = a;
  r.mass_scale = base.mass_scale;
  r.status = traj.status;
  r.outcome = classify(traj);
  r.strichartz_acc = traj.records.back().strichartz_acc;
  r.strichartz_norm = std::pow(r.strichartz_acc, 1.0 / params.theta);
  for (const auto& rec : traj.records) r.peak_h_alpha = std::max(r.peak_h_alpha, std::sqrt(rec.h_alpha_sq));
  r.initial_mass_sq = traj.records.front().mass_sq;
  r.final_mass_sq = traj.records.back().mass_sq;
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

std::vector<SweepResult> sweep_damping(const SweepJob& base, const std::vector<double>& a_values, int threads,
                                       const std::function<void(const SweepResult&)>& on_result) {
  for (double a : a_values) {
    if (!(a >= 0.0)) throw std::invalid_argument("friction values must be non-negative");
  }
  std::vector<SweepResult> results(a_values.size());
  std::atomic<std::size_t> next{0};
  std::mutex sink;
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= a_values.size()) return;
      try {
        results[i] = run_point(base, a_values[i]);
        if (on_result) {
          std::lock_guard lock(sink);
          on_result(results[i]);
        }
      } catch (...) {
        std::lock_guard lock(sink);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int n_threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(a_values.size(), 1)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(results.begin(), results.end(), [](const SweepResult& x, const SweepResult& y) { return x.a < y.a; });
  return results;
}

bool accumulators_decreasing(const std::vector<SweepResult>& results) {
  const SweepResult* prev = nullptr;
  for (const auto& r : results) {
    if (!(r.a > 0.0) || r.status != RunStatus::completed) continue;
    if (prev != nullptr && !(r.strichartz_acc < prev->strichartz_acc)) return false;
    prev = &r;
  }
  return true;
}

bool energy_non_increasing(const Trajectory& trajectory) {
  if (trajectory.status != RunStatus::completed) return false;
  const auto& recs = trajectory.records;
  double resid_scale = 0.0;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    if (std::isfinite(recs[i].energy_resid)) resid_scale = std::max(resid_scale, std::abs(recs[i].energy_resid));
  }
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const double rise = recs[i].energy - recs[i - 1].energy;
    if (rise > 10.0 * resid_scale * (recs[i].t - recs[i - 1].t)) return false;
  }
  return true;
}

ThresholdProbeReport mass_threshold_probe(const InitialProfile& profile, const GridPtr& grid,
                                          const ModelParams& params, const StepperConfig& stepper,
                                          double scale_lo, double scale_hi, int budget,
                                          const GNConstant* coupling) {
  if (!(scale_lo >= 0.0) || !(scale_hi > scale_lo)) throw std::invalid_argument("invalid scale bracket");
  ThresholdProbeReport report;
  report.hypotheses_ok = params.s < params.alpha && params.s + params.alpha >= 1.0;
  if (coupling != nullptr) report.predicted_beta = monotonicity_threshold(*coupling, params);

  StepperConfig cfg = stepper;
  cfg.record_stride = 1;
  cfg.snapshot_times.clear();
  const double unit_mass = mass(sample_profile(profile, grid)).l2_norm / std::max(std::abs(profile.amplitude), 1e-300);

  auto non_increasing = [&](double scale) {
    InitialProfile scaled = profile;
    scaled.amplitude *= scale;
    ++report.runs;
    return energy_non_increasing(evolve(sample_profile(scaled, grid), params, cfg));
  };

  double lo = scale_lo;
  double hi = scale_hi;
  report.scale_below = lo;
  report.scale_above = hi;
  const double amp = std::abs(profile.amplitude);
  report.mass_below = lo * amp * unit_mass;
  report.mass_above = hi * amp * unit_mass;
  report.crossover_mass = 0.5 * (report.mass_below + report.mass_above);
  if (!non_increasing(lo) || non_increasing(hi)) return report;

  for (int i = 0; i < budget; ++i) {
    const double mid = 0.5 * (lo + hi);
    (non_increasing(mid) ? lo : hi) = mid;
  }
  report.conclusive = true;
  report.scale_below = lo;
  report.scale_above = hi;
  report.mass_below = lo * amp * unit_mass;
  report.mass_above = hi * amp * unit_mass;
  report.crossover_mass = 0.5 * (report.mass_below + report.mass_above);
  return report;
}

AprioriReport apriori_bounds_check(const Trajectory& trajectory, const ModelParams& params) {
  if (!(params.a > 0.0)) throw std::invalid_argument("a-priori bounds need a > 0");
  const auto& recs = trajectory.records;
  if (recs.empty()) throw std::invalid_argument("a-priori bounds need at least one record");
  AprioriReport rep;
  rep.initial_mass = std::sqrt(recs.front().mass_sq);
  rep.sup_mass = rep.initial_mass;
  double integral = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    rep.sup_mass = std::max(rep.sup_mass, std::sqrt(recs[i].mass_sq));
    if (i > 0) {
      if (recs[i].mass_sq > recs[i - 1].mass_sq) rep.mass_monotone = false;
      integral += 0.5 * (recs[i].t - recs[i - 1].t) * (recs[i].h_s_sq + recs[i - 1].h_s_sq);
    }
  }
  rep.sup_mass_margin = rep.initial_mass - rep.sup_mass;
  rep.dissipation_norm = std::sqrt(integral);
  rep.dissipation_bound = rep.initial_mass / std::sqrt(2.0 * params.a);
  rep.dissipation_margin = rep.dissipation_bound - rep.dissipation_norm;
  return rep;
}

}  // namespace fnls
