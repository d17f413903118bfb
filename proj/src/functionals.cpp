#include "fnls/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fnls/semigroup.hpp"

namespace fnls {

namespace {

double spectral_weight(const Grid& grid) { return grid.cell_volume() / static_cast<double>(grid.size()); }

double seminorm_from_spectrum(const Grid& grid, std::span<const Complex> coeffs, double beta) {
  const auto xi_sq = grid.xi_norm_sq();
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) sum += symbol_power(xi_sq[k], beta) * std::norm(coeffs[k]);
  return sum * spectral_weight(grid);
}

// ∫ ((-Δ)^s u) |u|^{p-1} ū as a complex number.
Complex coupling_integral(const Field& f, std::span<const Complex> coeffs, const ModelParams& params) {
  const Grid& grid = f.grid();
  const auto xi_sq = grid.xi_norm_sq();
  std::vector<Complex> ds(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) ds[k] = coeffs[k] * symbol_power(xi_sq[k], params.s);
  std::vector<Complex> ds_phys(coeffs.size());
  inverse_fft(grid, ds, ds_phys);
  Complex sum{0.0, 0.0};
  const auto u = f.values();
  for (std::size_t j = 0; j < u.size(); ++j) {
    sum += ds_phys[j] * std::pow(std::abs(u[j]), params.p - 1.0) * std::conj(u[j]);
  }
  return sum * grid.cell_volume();
}

EnergyRate rate_from_spectrum(const Field& f, std::span<const Complex> coeffs, const ModelParams& params) {
  EnergyRate rate;
  if (params.a == 0.0) return rate;
  rate.dissipation = -params.a * seminorm_from_spectrum(f.grid(), coeffs, params.s + params.alpha);
  const Complex c = coupling_integral(f, coeffs, params);
  rate.coupling_re = params.a * c.real();
  rate.coupling_im = params.a * c.imag();
  return rate;
}

}  // namespace

MassValue mass(const Field& f) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += std::norm(v);
  const double sq = sum * f.grid().cell_volume();
  return {std::sqrt(sq), sq};
}

double mass_sq_spectral(const Field& f) {
  const auto coeffs = f.spectral();
  double sum = 0.0;
  for (const auto& c : coeffs) sum += std::norm(c);
  return sum * spectral_weight(f.grid());
}

double fractional_seminorm_sq(const Field& f, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("seminorm order must be non-negative");
  const auto coeffs = f.spectral();
  return seminorm_from_spectrum(f.grid(), coeffs, beta);
}

double lp_norm_pow(const Field& f, double q) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += std::pow(std::abs(v), q);
  return sum * f.grid().cell_volume();
}

double energy(const Field& f, const ModelParams& params) {
  const double kinetic = fractional_seminorm_sq(f, params.alpha);
  const double potential = lp_norm_pow(f, params.theta);
  return 0.5 * kinetic - params.d / (4.0 * params.alpha + 2.0 * params.d) * potential;
}

EnergyRate energy_identity_rhs(const Field& f, const ModelParams& params) {
  const auto coeffs = f.spectral();
  return rate_from_spectrum(f, coeffs, params);
}

DiagnosticsRecord make_record(const Field& f, const ModelParams& params, double t) {
  const auto coeffs = f.spectral();
  const Grid& grid = f.grid();
  DiagnosticsRecord r;
  r.t = t;
  r.mass_sq = mass(f).squared;
  r.h_alpha_sq = seminorm_from_spectrum(grid, coeffs, params.alpha);
  r.h_s_sq = seminorm_from_spectrum(grid, coeffs, params.s);
  r.h_salpha_sq = seminorm_from_spectrum(grid, coeffs, params.s + params.alpha);
  r.lp_theta = lp_norm_pow(f, params.theta);
  r.energy = 0.5 * r.h_alpha_sq - params.d / (4.0 * params.alpha + 2.0 * params.d) * r.lp_theta;
  r.energy_rate = rate_from_spectrum(f, coeffs, params).total();
  r.mass_resid = std::numeric_limits<double>::quiet_NaN();
  r.energy_resid = std::numeric_limits<double>::quiet_NaN();
  return r;
}

double mass_identity_residual(const DiagnosticsRecord& r0, const DiagnosticsRecord& r1,
                              const ModelParams& params) {
  const double dt = r1.t - r0.t;
  if (!(dt > 0.0)) throw std::invalid_argument("residual needs records with increasing time");
  return (r1.mass_sq - r0.mass_sq) / dt + params.a * (r0.h_s_sq + r1.h_s_sq);
}

double energy_identity_residual(const DiagnosticsRecord& r0, const DiagnosticsRecord& r1) {
  const double dt = r1.t - r0.t;
  if (!(dt > 0.0)) throw std::invalid_argument("residual needs records with increasing time");
  return (r1.energy - r0.energy) / dt - 0.5 * (r0.energy_rate + r1.energy_rate);
}

double StrichartzSeries::norm(double theta) const { return std::pow(total(), 1.0 / theta); }

StrichartzSeries strichartz_accumulate(std::span<const DiagnosticsRecord> records) {
  if (records.size() < 2) throw std::invalid_argument("Strichartz accumulation needs at least two records");
  StrichartzSeries series;
  series.times.reserve(records.size());
  series.integral.reserve(records.size());
  double acc = 0.0;
  series.times.push_back(records[0].t);
  series.integral.push_back(0.0);
  for (std::size_t i = 1; i < records.size(); ++i) {
    acc += 0.5 * (records[i].t - records[i - 1].t) * (records[i].lp_theta + records[i - 1].lp_theta);
    series.times.push_back(records[i].t);
    series.integral.push_back(acc);
  }
  return series;
}

}  // namespace fnls
