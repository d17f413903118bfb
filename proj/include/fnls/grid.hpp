#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fnls {

/// Periodic Cartesian lattice on [-L/2, L/2)^d with n nodes per dimension.
///
/// Node j sits at x_j = (j - n/2) h, h = L/n, so the box center is node n/2
/// and index reflection j -> (n - j) mod n maps x to -x exactly. Frequencies
/// are stored in FFT wraparound order: ξ_k = (2π/L) k with
/// k = 0, 1, ..., n/2-1, -n/2, ..., -1. Multi-dimensional arrays are
/// row-major with the last dimension fastest.
class Grid {
 public:
  Grid(int n_per_dim, double box_length, int d);

  int n_per_dim() const { return n_; }
  double box_length() const { return length_; }
  int d() const { return d_; }
  std::size_t size() const { return size_; }
  double spacing() const { return length_ / n_; }
  /// Quadrature weight of one node, (L/n)^d.
  double cell_volume() const { return cell_volume_; }
  double volume() const;

  /// 1-D node coordinates, shared by every axis.
  std::span<const double> coordinates() const { return coords_; }
  /// 1-D frequencies in wraparound order.
  std::span<const double> frequencies() const { return freqs_; }
  /// Integer wavenumbers in wraparound order.
  std::span<const int> wavenumbers() const { return wavenumbers_; }
  /// |ξ|² for every lattice point, same flat layout as a field.
  std::span<const double> xi_norm_sq() const { return xi_norm_sq_; }

  /// Per-axis indices of a flat index (component 1 unused when d = 1).
  std::array<int, 2> unflatten(std::size_t flat) const;
  std::size_t flatten(std::array<int, 2> idx) const;
  /// Flat index of the node reflected through the box center.
  std::size_t reflect(std::size_t flat) const;
  /// Flat spectral index of integer mode k (components may be negative).
  std::size_t mode_index(std::array<int, 2> k) const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && d_ == other.d_ && length_ == other.length_;
  }

 private:
  int n_;
  double length_;
  int d_;
  std::size_t size_;
  double cell_volume_;
  std::vector<double> coords_;
  std::vector<double> freqs_;
  std::vector<int> wavenumbers_;
  std::vector<double> xi_norm_sq_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws std::invalid_argument unless n is a power of two ≥ 2, L > 0 and
/// d ∈ {1, 2}.
GridPtr make_grid(int n_per_dim, double box_length, int d);

}  // namespace fnls
