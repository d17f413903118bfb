#pragma once

#include <array>
#include <complex>
#include <string>

#include "fnls/field.hpp"
#include "fnls/grid.hpp"

namespace fnls {

enum class ProfileKind { gaussian, super_gaussian, single_mode, ring };

std::string to_string(ProfileKind kind);
/// Throws std::invalid_argument for unknown names.
ProfileKind profile_kind_from_string(const std::string& name);

/// Initial datum description. Radial kinds are centered at the origin:
///   gaussian        c exp(-|x|²/(2w²))
///   super_gaussian  c exp(-(|x|/w)^{2m}/2), m = order
///   ring            c exp(-(|x|-R)²/(2w²)), R = radius
///   single_mode     c exp(i ξ_k·x), k = mode
struct InitialProfile {
  ProfileKind kind = ProfileKind::gaussian;
  std::complex<double> amplitude{1.0, 0.0};
  double width = 1.0;
  double order = 2.0;
  double radius = 3.0;
  std::array<int, 2> mode{1, 0};

  bool radial() const { return kind != ProfileKind::single_mode; }
  /// Point evaluation at squared radius r² (radial kinds only).
  std::complex<double> radial_value(double r_sq) const;
  bool operator==(const InitialProfile&) const = default;
};

/// Relative mass a localized profile may leave outside the box.
inline constexpr double kDefaultTruncationTolerance = 1e-10;

/// Samples the profile at the grid nodes. For localized kinds the mass
/// falling outside the box (measured on a 3x extended lattice) must stay
/// below truncation_tol relative to the total, otherwise
/// std::invalid_argument is thrown.
Field sample_profile(const InitialProfile& profile, const GridPtr& grid,
                     double truncation_tol = kDefaultTruncationTolerance);

}  // namespace fnls
