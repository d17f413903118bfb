#pragma once

#include <span>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/params.hpp"

namespace fnls {

/// One snapshot of every tracked functional. Residual fields compare this
/// record with its predecessor and are NaN on the first record.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass_sq = 0.0;
  double energy = 0.0;
  double h_alpha_sq = 0.0;    // ‖(-Δ)^{α/2} u‖²
  double h_s_sq = 0.0;        // ‖(-Δ)^{s/2} u‖²
  double h_salpha_sq = 0.0;   // ‖(-Δ)^{(s+α)/2} u‖²
  double lp_theta = 0.0;      // ‖u‖_θ^θ
  double strichartz_acc = 0.0;
  double mass_resid = 0.0;
  double energy_resid = 0.0;
  /// Right-hand side of the energy dissipation identity at this time.
  double energy_rate = 0.0;
};

struct MassValue {
  double l2_norm = 0.0;
  double squared = 0.0;
};

MassValue mass(const Field& f);
/// Squared mass from the spectral coefficients (Parseval).
double mass_sq_spectral(const Field& f);

/// ‖(-Δ)^{β/2} f‖², i.e. Σ |ξ|^{2β} |f̂|² suitably normalized.
double fractional_seminorm_sq(const Field& f, double beta);
/// ∫ |f|^q by rectangle rule.
double lp_norm_pow(const Field& f, double q);

/// E(u) = ½‖(-Δ)^{α/2}u‖² - (d/(4α+2d)) ‖u‖_θ^θ.
double energy(const Field& f, const ModelParams& params);

/// Terms of the energy dissipation rate dE/dt along the damped flow.
///
/// Differentiating E along u_t = -i(-Δ)^α u + i|u|^{p-1}u - a(-Δ)^s u gives
///   dE/dt = -a‖(-Δ)^{(s+α)/2}u‖² + a Re∫ ((-Δ)^s u) |u|^{p-1} ū.
/// The same integral's imaginary part is reported separately because it
/// is the form usually quoted for this identity; it vanishes for real u
/// and does not match the finite-difference rate.
struct EnergyRate {
  double dissipation = 0.0;   // -a‖(-Δ)^{(s+α)/2}u‖²
  double coupling_re = 0.0;   // a Re∫((-Δ)^s u)|u|^{p-1}ū
  double coupling_im = 0.0;   // a Im∫((-Δ)^s u)|u|^{p-1}ū
  double total() const { return dissipation + coupling_re; }
  double total_im_form() const { return dissipation + coupling_im; }
};

EnergyRate energy_identity_rhs(const Field& f, const ModelParams& params);

/// All functionals at time t; strichartz_acc and residuals left at zero.
DiagnosticsRecord make_record(const Field& f, const ModelParams& params, double t);

/// (m²(t1) - m²(t0))/Δt + a (h_s(t0) + h_s(t1)). Throws if Δt ≤ 0.
double mass_identity_residual(const DiagnosticsRecord& r0, const DiagnosticsRecord& r1,
                              const ModelParams& params);
/// (E(t1) - E(t0))/Δt - (rate(t0) + rate(t1))/2. Throws if Δt ≤ 0.
double energy_identity_residual(const DiagnosticsRecord& r0, const DiagnosticsRecord& r1);

struct StrichartzSeries {
  std::vector<double> times;
  /// ∫_0^t ‖u‖_θ^θ dτ at each record time (trapezoid rule).
  std::vector<double> integral;
  double total() const { return integral.empty() ? 0.0 : integral.back(); }
  /// total^{1/θ}, the space-time L^θ norm.
  double norm(double theta) const;
};

/// Trapezoidal accumulation of lp_theta. Needs ≥ 2 records.
StrichartzSeries strichartz_accumulate(std::span<const DiagnosticsRecord> records);

}  // namespace fnls
