#include "fnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fnls {

namespace {

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int n_per_dim, double box_length, int d) : n_(n_per_dim), length_(box_length), d_(d) {
  if (!is_power_of_two(n_per_dim)) {
    throw std::invalid_argument("grid size must be a power of two >= 2, got " + std::to_string(n_per_dim));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw std::invalid_argument("box length must be positive");
  }
  if (d != 1 && d != 2) {
    throw std::invalid_argument("unsupported dimension d = " + std::to_string(d));
  }
  size_ = d == 1 ? static_cast<std::size_t>(n_) : static_cast<std::size_t>(n_) * n_;
  const double h = length_ / n_;
  cell_volume_ = std::pow(h, d_);

  coords_.resize(n_);
  freqs_.resize(n_);
  wavenumbers_.resize(n_);
  const double dk = 2.0 * std::numbers::pi / length_;
  for (int j = 0; j < n_; ++j) {
    coords_[j] = static_cast<double>(j - n_ / 2) * h;
    const int k = j < n_ / 2 ? j : j - n_;
    wavenumbers_[j] = k;
    freqs_[j] = dk * k;
  }

  xi_norm_sq_.resize(size_);
  if (d_ == 1) {
    for (int j = 0; j < n_; ++j) xi_norm_sq_[j] = freqs_[j] * freqs_[j];
  } else {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        xi_norm_sq_[static_cast<std::size_t>(i) * n_ + j] = freqs_[i] * freqs_[i] + freqs_[j] * freqs_[j];
      }
    }
  }
}

double Grid::volume() const { return std::pow(length_, d_); }

std::array<int, 2> Grid::unflatten(std::size_t flat) const {
  if (d_ == 1) return {static_cast<int>(flat), 0};
  return {static_cast<int>(flat / n_), static_cast<int>(flat % n_)};
}

std::size_t Grid::flatten(std::array<int, 2> idx) const {
  if (d_ == 1) return static_cast<std::size_t>(idx[0]);
  return static_cast<std::size_t>(idx[0]) * n_ + idx[1];
}

std::size_t Grid::reflect(std::size_t flat) const {
  auto idx = unflatten(flat);
  for (int k = 0; k < d_; ++k) idx[k] = (n_ - idx[k]) % n_;
  return flatten(idx);
}

std::size_t Grid::mode_index(std::array<int, 2> k) const {
  std::array<int, 2> idx{0, 0};
  for (int c = 0; c < d_; ++c) {
    if (k[c] < -n_ / 2 || k[c] >= n_ / 2) {
      throw std::invalid_argument("mode index outside the frequency lattice");
    }
    idx[c] = ((k[c] % n_) + n_) % n_;
  }
  return flatten(idx);
}

GridPtr make_grid(int n_per_dim, double box_length, int d) {
  return std::make_shared<const Grid>(n_per_dim, box_length, d);
}

}  // namespace fnls
