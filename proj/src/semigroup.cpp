#include "fnls/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "fnls/error.hpp"

namespace fnls {

double symbol_power(double xi_norm_sq, double beta) {
  if (beta == 0.0) return 1.0;
  if (xi_norm_sq == 0.0) return 0.0;
  // |ξ|^{2β} = (|ξ|²)^β
  return std::pow(xi_norm_sq, beta);
}

Field fractional_laplacian(const Field& f, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("fractional order must be non-negative");
  auto coeffs = f.spectral();
  const auto xi_sq = f.grid().xi_norm_sq();
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= symbol_power(xi_sq[k], beta);
  return Field::from_spectral(f.grid_ptr(), std::move(coeffs));
}

Complex SemigroupMultiplier::factor(double xi_norm_sq, const ModelParams& params, double t) {
  const double dispersion = symbol_power(xi_norm_sq, params.alpha);
  const double damping = params.a * symbol_power(xi_norm_sq, params.s);
  return std::exp(-damping * t) * std::polar(1.0, -dispersion * t);
}

SemigroupMultiplier::SemigroupMultiplier(const Grid& grid, const ModelParams& params, double t) : t_(t) {
  if (t < 0.0) {
    throw IrreversibleTimeError("the damped semigroup is irreversible: negative time " + std::to_string(t));
  }
  if (!std::isfinite(t)) throw std::invalid_argument("semigroup time must be finite");
  const auto xi_sq = grid.xi_norm_sq();
  factors_.resize(xi_sq.size());
  for (std::size_t k = 0; k < xi_sq.size(); ++k) factors_[k] = factor(xi_sq[k], params, t);
}

Field apply_semigroup(const Field& f, double t, const ModelParams& params) {
  const SemigroupMultiplier m(f.grid(), params, t);
  if (t == 0.0) return f;
  auto coeffs = f.spectral();
  const auto factors = m.factors();
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= factors[k];
  return Field::from_spectral(f.grid_ptr(), std::move(coeffs));
}

double semigroup_compose_check(const Field& f, double t1, double t2, const ModelParams& params) {
  const Field once = apply_semigroup(f, t1 + t2, params);
  const Field twice = apply_semigroup(apply_semigroup(f, t2, params), t1, params);
  return l2_norm(once - twice);
}

std::vector<double> dealias_mask(const Grid& grid) {
  const auto k = grid.wavenumbers();
  const int n = grid.n_per_dim();
  std::vector<double> mask(grid.size(), 1.0);
  for (std::size_t flat = 0; flat < mask.size(); ++flat) {
    const auto idx = grid.unflatten(flat);
    for (int c = 0; c < grid.d(); ++c) {
      if (3 * std::abs(k[idx[c]]) >= n) mask[flat] = 0.0;
    }
  }
  return mask;
}

}  // namespace fnls
