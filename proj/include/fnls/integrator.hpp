#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/functionals.hpp"
#include "fnls/params.hpp"
#include "fnls/semigroup.hpp"

namespace fnls {

struct StepperConfig {
  double dt = 0.01;
  double t_end = 1.0;
  bool dealias = true;
  /// Abort once ‖(-Δ)^{α/2}u‖ reaches this multiple of its initial value.
  double blowup_threshold = 1e3;
  int record_stride = 1;
  /// Halve dt when the per-step mass-identity residual exceeds this
  /// (relative to the current squared mass). 0 disables the rule.
  double adaptive_tolerance = 0.0;
  /// Times at which full fields are kept in the trajectory.
  std::vector<double> snapshot_times;
  bool operator==(const StepperConfig&) const = default;
};

/// Throws std::invalid_argument on dt ≤ 0, t_end < 0, threshold ≤ 1 or
/// stride < 1.
void validate(const StepperConfig& config);

enum class RunStatus { completed, blowup_detected, instability };
std::string to_string(RunStatus status);

struct Trajectory {
  std::vector<DiagnosticsRecord> records;
  std::map<double, Field> snapshots;
  std::optional<Field> final_field;
  RunStatus status = RunStatus::completed;
  double final_dt = 0.0;
  int steps = 0;

  /// Snapshot stored within `tol` of time t, or nullptr.
  const Field* snapshot_at(double t, double tol = 1e-9) const;
};

/// Exact flow of u_t = i|u|^{p-1}u: u ← u exp(i dt |u|^{p-1}).
Field nonlinear_substep(const Field& f, double dt, const ModelParams& params);
void nonlinear_substep_inplace(Field& f, double dt, const ModelParams& params);

/// Strang splitter with the linear multiplier and dealias mask cached for
/// a fixed dt.
class StrangStepper {
 public:
  StrangStepper(const Grid& grid, const ModelParams& params, double dt, bool dealias);

  double dt() const { return dt_; }
  /// N(dt/2) ∘ [mask] S(dt) ∘ N(dt/2), in place.
  void step(Field& f) const;

 private:
  ModelParams params_;
  double dt_;
  SemigroupMultiplier multiplier_;
  std::vector<double> mask_;
  bool dealias_;
};

/// One Strang step. dt = 0 is the identity; dt < 0 throws.
Field strang_step(const Field& f, double dt, const ModelParams& params, const StepperConfig& config);

/// Integrates to config.t_end. Blow-up and non-finite values end the run
/// with the matching status; invalid configurations throw.
Trajectory evolve(const Field& initial, const ModelParams& params, const StepperConfig& config);

struct ConvergenceReport {
  std::vector<double> dts;
  /// ‖u_{dt_i} - u_{dt_{i+1}}‖_{L²} at t_end.
  std::vector<double> differences;
  /// Pairwise orders log(e_i/e_{i+1}) / log(dt_i/dt_{i+1}).
  std::vector<double> pairwise_orders;
  /// Least-squares slope of log e_i against log dt_i.
  double order = 0.0;
  bool conclusive = true;
};

/// Observed temporal order from successive refinements. Requires ≥ 3
/// strictly decreasing dt values.
ConvergenceReport convergence_study(const Field& initial, const ModelParams& params,
                                    const std::vector<double>& dts, const StepperConfig& base);

/// Least-squares slope of log y against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace fnls
