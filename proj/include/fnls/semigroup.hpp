#pragma once

#include <vector>

#include "fnls/field.hpp"
#include "fnls/params.hpp"

namespace fnls {

/// |ξ|^{2β} evaluated from |ξ|², with the convention |0|^{2β} = 0 for β > 0
/// and |ξ|^0 = 1 everywhere.
double symbol_power(double xi_norm_sq, double beta);

/// (-Δ)^β f as the spectral multiplier |ξ|^{2β}. Throws for β < 0.
Field fractional_laplacian(const Field& f, double beta);

/// Per-mode factors of S_{a,α,s}(t) = exp((-i(-Δ)^α - a(-Δ)^s) t).
class SemigroupMultiplier {
 public:
  /// Throws IrreversibleTimeError for t < 0.
  SemigroupMultiplier(const Grid& grid, const ModelParams& params, double t);

  double time() const { return t_; }
  std::span<const Complex> factors() const { return factors_; }

  /// Closed-form factor for one frequency, exp((-i|ξ|^{2α} - a|ξ|^{2s}) t).
  static Complex factor(double xi_norm_sq, const ModelParams& params, double t);

 private:
  double t_;
  std::vector<Complex> factors_;
};

Field apply_semigroup(const Field& f, double t, const ModelParams& params);

/// ‖S(t1+t2)u - S(t1)S(t2)u‖_{L²}.
double semigroup_compose_check(const Field& f, double t1, double t2, const ModelParams& params);

/// 0/1 mask implementing the 2/3 rule: a mode survives iff 3|k_i| < n on
/// every axis.
std::vector<double> dealias_mask(const Grid& grid);

}  // namespace fnls
