#pragma once

namespace fnls {

/// Physical parameters of the damped fractional NLS
///
///   i u_t - (-Δ)^α u + |u|^{p-1} u + i a (-Δ)^s u = 0
///
/// with the L²-critical exponent p = 1 + 4α/d. Instances are immutable
/// once built by make_params.
struct ModelParams {
  int d = 2;
  double alpha = 0.8;
  double s = 0.8;
  double a = 1.0;
  double p = 1.0 + 4.0 * 0.8 / 2.0;
  double theta = 2.0 + 4.0 * 0.8 / 2.0;
  /// True iff α lies in the open interval (d/(2d-1), 1) where the
  /// global-existence theory applies. The solver runs either way.
  bool valid = true;

  /// Exponent 4α/d that multiplies the mass in the critical inequalities.
  double mass_exponent() const { return 4.0 * alpha / d; }
  bool undamped() const { return a == 0.0; }
  bool operator==(const ModelParams&) const = default;
};

/// Throws std::invalid_argument for d ∉ {1, 2}, α ≤ 0, s < 0 or a < 0.
ModelParams make_params(int d, double alpha, double s, double a);

/// Lower end d/(2d-1) of the admissible dispersion range.
double alpha_lower_bound(int d);

}  // namespace fnls
