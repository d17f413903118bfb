#pragma once

#include <cstddef>
#include <vector>

namespace fnls {

/// Refinement controls for kernel_l1.
struct KernelQuadrature {
  int d = 1;
  /// Half-width of the level-0 box in units of the kernel length (a t)^{1/(2s)}.
  double base_half_width = 16.0;
  /// Level-0 spectral cutoff: modes with a t |ξ|^{2s} above this are dropped.
  double base_decay_exponent = 36.0;
  int max_levels = 8;
  double tolerance = 1e-6;
  /// Refuses transforms larger than this many points.
  std::size_t max_points = std::size_t{1} << 23;
};

struct KernelL1Result {
  /// ‖H_{a,s}(t,·)‖_{L¹} with H(x) = ∫ e^{-ixξ} e^{-a t |ξ|^{2s}} dξ
  /// (no (2π)^{-d} factor).
  double value = 0.0;
  /// value / (2π)^d, the mass of the probability-normalized kernel.
  double normalized = 0.0;
  std::vector<double> level_values;
  /// Relative change between the two finest levels.
  double relative_change = 0.0;
  /// min H / max H on the finest level; negative values mean sign changes.
  double min_to_max = 0.0;
  int levels_used = 0;
};

/// L¹ norm of the dissipative kernel H_{a,s}(t,·) on ℝ^d by inverse DFT on
/// a periodic box whose half-width doubles with each level while the
/// spectral cutoff tightens. Converged once two successive levels agree to
/// quad.tolerance; otherwise throws ConvergenceError. Requires s, t, a > 0.
KernelL1Result kernel_l1(double s_order, double t, double a_coef, const KernelQuadrature& quad = {});

}  // namespace fnls
