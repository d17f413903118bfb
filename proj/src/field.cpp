#include "fnls/field.hpp"

#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace fnls {

Field::Field(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("field needs a grid");
  values_.assign(grid_->size(), Complex{0.0, 0.0});
}

Field::Field(GridPtr grid, std::vector<Complex> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("field needs a grid");
  if (values_.size() != grid_->size()) throw std::invalid_argument("field values do not match grid size");
}

std::vector<Complex> Field::spectral() const {
  std::vector<Complex> out(values_.size());
  forward_fft(*grid_, values_, out);
  return out;
}

Field Field::from_spectral(GridPtr grid, std::vector<Complex> coefficients) {
  if (!grid) throw std::invalid_argument("field needs a grid");
  std::vector<Complex> values(coefficients.size());
  inverse_fft(*grid, coefficients, values);
  return Field(std::move(grid), std::move(values));
}

bool Field::all_finite() const {
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

Field& Field::operator+=(const Field& other) {
  if (!(*grid_ == other.grid())) throw std::invalid_argument("fields live on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!(*grid_ == other.grid())) throw std::invalid_argument("fields live on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(Complex factor) {
  for (auto& v : values_) v *= factor;
  return *this;
}

Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator*(Complex factor, Field f) { return f *= factor; }

void forward_fft(const Grid& grid, std::span<const Complex> in, std::span<Complex> out) {
  detail::execute_fft(grid.n_per_dim(), grid.d(), -1, in, out);
}

void inverse_fft(const Grid& grid, std::span<const Complex> in, std::span<Complex> out) {
  detail::execute_fft(grid.n_per_dim(), grid.d(), +1, in, out);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : out) v *= scale;
}

double l2_norm(const Field& f) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += std::norm(v);
  return std::sqrt(sum * f.grid().cell_volume());
}

}  // namespace fnls
