#include "fnls/integrator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fnls/error.hpp"

namespace fnls {

void validate(const StepperConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw std::invalid_argument("stepper dt must be positive");
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) {
    throw std::invalid_argument("stepper t_end must be non-negative");
  }
  if (!(config.blowup_threshold > 1.0)) throw std::invalid_argument("blowup threshold must exceed 1");
  if (config.record_stride < 1) throw std::invalid_argument("record stride must be at least 1");
  if (!(config.adaptive_tolerance >= 0.0)) throw std::invalid_argument("adaptive tolerance must be non-negative");
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::instability: return "instability";
  }
  return "unknown";
}

const Field* Trajectory::snapshot_at(double t, double tol) const {
  auto it = snapshots.lower_bound(t - tol);
  if (it != snapshots.end() && std::abs(it->first - t) <= tol) return &it->second;
  return nullptr;
}

void nonlinear_substep_inplace(Field& f, double dt, const ModelParams& params) {
  const double power = params.p - 1.0;
  for (auto& v : f.values()) v *= std::polar(1.0, dt * std::pow(std::abs(v), power));
}

Field nonlinear_substep(const Field& f, double dt, const ModelParams& params) {
  Field out = f;
  nonlinear_substep_inplace(out, dt, params);
  return out;
}

StrangStepper::StrangStepper(const Grid& grid, const ModelParams& params, double dt, bool dealias)
    : params_(params), dt_(dt), multiplier_(grid, params, dt), dealias_(dealias) {
  if (dealias_) mask_ = dealias_mask(grid);
}

void StrangStepper::step(Field& f) const {
  const Grid& grid = f.grid();
  nonlinear_substep_inplace(f, 0.5 * dt_, params_);
  std::vector<Complex> coeffs(f.size());
  forward_fft(grid, f.values(), coeffs);
  const auto factors = multiplier_.factors();
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= factors[k];
  if (dealias_) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= mask_[k];
  }
  inverse_fft(grid, coeffs, f.values());
  nonlinear_substep_inplace(f, 0.5 * dt_, params_);
}

Field strang_step(const Field& f, double dt, const ModelParams& params, const StepperConfig& config) {
  if (dt == 0.0) return f;
  const StrangStepper stepper(f.grid(), params, dt, config.dealias);
  Field out = f;
  stepper.step(out);
  return out;
}

namespace {

struct MassAndDissipation {
  double mass_sq;
  double h_s_sq;
};

MassAndDissipation mass_and_dissipation(const Field& f, const ModelParams& params) {
  const auto rec = make_record(f, params, 0.0);
  return {rec.mass_sq, rec.h_s_sq};
}

bool time_matches(double a, double b, double dt) { return std::abs(a - b) <= 1e-9 * std::max(1.0, dt); }

}  // namespace

Trajectory evolve(const Field& initial, const ModelParams& params, const StepperConfig& config) {
  validate(config);
  if (!initial.all_finite()) throw std::invalid_argument("initial field has non-finite values");

  const Grid& grid = initial.grid();
  Trajectory traj;
  Field u = initial;

  auto take_snapshot = [&](double t) {
    for (double ts : config.snapshot_times) {
      if (time_matches(ts, t, config.dt)) traj.snapshots.insert_or_assign(ts, u);
    }
  };

  DiagnosticsRecord first = make_record(u, params, 0.0);
  first.strichartz_acc = 0.0;
  traj.records.push_back(first);
  take_snapshot(0.0);
  const double h_alpha0 = std::sqrt(first.h_alpha_sq);

  double dt = config.dt;
  bool halved = false;
  StrangStepper stepper(grid, params, dt, config.dealias);
  double t = 0.0;
  long k = 0;

  while (true) {
    const double remaining = config.t_end - t;
    if (remaining <= 1e-9 * dt) break;
    double h = dt;
    bool last = false;
    if (remaining <= dt * (1.0 + 1e-9)) {
      last = true;
      if (remaining < dt * (1.0 - 1e-9)) h = remaining;
    }

    Field next = u;
    if (h == stepper.dt()) {
      stepper.step(next);
    } else {
      StrangStepper(grid, params, h, config.dealias).step(next);
    }

    if (!next.all_finite()) {
      traj.status = RunStatus::instability;
      break;
    }

    if (config.adaptive_tolerance > 0.0 && params.a > 0.0) {
      const auto before = mass_and_dissipation(u, params);
      const auto after = mass_and_dissipation(next, params);
      const double resid = (after.mass_sq - before.mass_sq) / h + params.a * (before.h_s_sq + after.h_s_sq);
      if (std::abs(resid) > config.adaptive_tolerance * std::max(before.mass_sq, 1e-300) &&
          dt > config.dt / 1024.0) {
        dt *= 0.5;
        halved = true;
        stepper = StrangStepper(grid, params, dt, config.dealias);
        continue;
      }
    }

    u = std::move(next);
    ++k;
    traj.steps = static_cast<int>(k);
    if (last) {
      t = config.t_end;
    } else if (!halved) {
      t = static_cast<double>(k) * config.dt;
    } else {
      t += h;
    }
    take_snapshot(t);

    if (k % config.record_stride == 0 || last) {
      DiagnosticsRecord rec = make_record(u, params, t);
      const DiagnosticsRecord& prev = traj.records.back();
      rec.strichartz_acc = prev.strichartz_acc + 0.5 * (rec.t - prev.t) * (rec.lp_theta + prev.lp_theta);
      rec.mass_resid = mass_identity_residual(prev, rec, params);
      rec.energy_resid = energy_identity_residual(prev, rec);
      traj.records.push_back(rec);
      if (h_alpha0 > 0.0 && std::sqrt(rec.h_alpha_sq) >= config.blowup_threshold * h_alpha0) {
        traj.status = RunStatus::blowup_detected;
        break;
      }
    }
  }

  traj.final_dt = dt;
  traj.final_field = std::move(u);
  return traj;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs at least two points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ConvergenceReport convergence_study(const Field& initial, const ModelParams& params,
                                    const std::vector<double>& dts, const StepperConfig& base) {
  if (dts.size() < 3) throw std::invalid_argument("convergence study needs at least three time steps");
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0)) throw std::invalid_argument("time steps must be positive");
    if (i > 0 && !(dts[i] < dts[i - 1])) throw std::invalid_argument("time steps must be strictly decreasing");
  }

  ConvergenceReport report;
  report.dts = dts;
  std::vector<Field> finals;
  for (double dt : dts) {
    StepperConfig cfg = base;
    cfg.dt = dt;
    cfg.adaptive_tolerance = 0.0;
    cfg.snapshot_times.clear();
    cfg.record_stride = std::numeric_limits<int>::max();
    Trajectory traj = evolve(initial, params, cfg);
    if (traj.status != RunStatus::completed) report.conclusive = false;
    finals.push_back(std::move(*traj.final_field));
  }
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
    report.differences.push_back(l2_norm(finals[i] - finals[i + 1]));
  }
  for (std::size_t i = 0; i + 1 < report.differences.size(); ++i) {
    const double e0 = report.differences[i];
    const double e1 = report.differences[i + 1];
    if (!(e1 < e0) || !(e1 > 0.0)) report.conclusive = false;
    report.pairwise_orders.push_back(std::log(e0 / e1) / std::log(dts[i] / dts[i + 1]));
  }
  std::vector<double> used(dts.begin(), dts.end() - 1);
  bool positive = true;
  for (double e : report.differences) positive = positive && e > 0.0;
  report.order = positive ? log_log_slope(used, report.differences) : std::numeric_limits<double>::quiet_NaN();
  if (!positive) report.conclusive = false;
  return report;
}

}  // namespace fnls
