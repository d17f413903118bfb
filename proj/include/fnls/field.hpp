#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

using Complex = std::complex<double>;

/// Complex state u(x) on a grid, stored in physical space.
///
/// Spectral coefficients are the unnormalized forward DFT
///   û_k = Σ_j u_j exp(-i ξ_k·x_j),
/// so Parseval reads  ∫|u|² dx ≈ h^d Σ|u_j|² = (h^d / N) Σ|û_k|².
class Field {
 public:
  explicit Field(GridPtr grid);
  Field(GridPtr grid, std::vector<Complex> values);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<Complex> values() { return values_; }
  std::span<const Complex> values() const { return values_; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  std::vector<Complex> spectral() const;
  static Field from_spectral(GridPtr grid, std::vector<Complex> coefficients);

  bool all_finite() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(Complex factor);

 private:
  GridPtr grid_;
  std::vector<Complex> values_;
};

Field operator-(Field lhs, const Field& rhs);
Field operator+(Field lhs, const Field& rhs);
Field operator*(Complex factor, Field f);

/// Unnormalized forward transform of raw data laid out on `grid`.
void forward_fft(const Grid& grid, std::span<const Complex> in, std::span<Complex> out);
/// Inverse transform including the 1/N factor, so inverse(forward(u)) = u.
void inverse_fft(const Grid& grid, std::span<const Complex> in, std::span<Complex> out);

/// L² inner-product norm ‖f‖ by rectangle-rule quadrature.
double l2_norm(const Field& f);

}  // namespace fnls
