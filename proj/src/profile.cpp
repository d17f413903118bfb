#include "fnls/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace fnls {

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::super_gaussian: return "super-gaussian";
    case ProfileKind::single_mode: return "single-mode";
    case ProfileKind::ring: return "ring";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "gaussian") return ProfileKind::gaussian;
  if (name == "super-gaussian") return ProfileKind::super_gaussian;
  if (name == "single-mode") return ProfileKind::single_mode;
  if (name == "ring") return ProfileKind::ring;
  throw std::invalid_argument("unknown profile kind '" + name + "'");
}

std::complex<double> InitialProfile::radial_value(double r_sq) const {
  const double w_sq = width * width;
  switch (kind) {
    case ProfileKind::gaussian:
      return amplitude * std::exp(-r_sq / (2.0 * w_sq));
    case ProfileKind::super_gaussian:
      return amplitude * std::exp(-0.5 * std::pow(r_sq / w_sq, order));
    case ProfileKind::ring: {
      const double dr = std::sqrt(r_sq) - radius;
      return amplitude * std::exp(-dr * dr / (2.0 * w_sq));
    }
    case ProfileKind::single_mode:
      break;
  }
  throw std::logic_error("radial_value called on a non-radial profile");
}

namespace {

void check_profile(const InitialProfile& p, const Grid& grid) {
  if (!std::isfinite(p.amplitude.real()) || !std::isfinite(p.amplitude.imag())) {
    throw std::invalid_argument("profile amplitude must be finite");
  }
  if (p.kind == ProfileKind::single_mode) return;
  if (!(p.width > 0.0) || !std::isfinite(p.width)) throw std::invalid_argument("profile width must be positive");
  if (p.kind == ProfileKind::super_gaussian && !(p.order > 0.0)) {
    throw std::invalid_argument("super-gaussian order must be positive");
  }
  if (p.kind == ProfileKind::ring) {
    if (grid.d() != 2) throw std::invalid_argument("ring profiles need d = 2");
    if (!(p.radius >= 0.0)) throw std::invalid_argument("ring radius must be non-negative");
  }
}

// Squared mass of a radial profile on the lattice extended threefold,
// split into the central box and everything else.
std::pair<double, double> inside_outside_mass(const InitialProfile& p, const Grid& grid) {
  const int n = grid.n_per_dim();
  const double h = grid.spacing();
  double inside = 0.0;
  double outside = 0.0;
  const int lo = -n - n / 2;
  const int hi = n + n / 2;
  if (grid.d() == 1) {
    for (int j = lo; j < hi; ++j) {
      const double x = j * h;
      const double m = std::norm(p.radial_value(x * x));
      (j >= -n / 2 && j < n / 2 ? inside : outside) += m;
    }
  } else {
    for (int i = lo; i < hi; ++i) {
      const double x = i * h;
      const bool in_x = i >= -n / 2 && i < n / 2;
      for (int j = lo; j < hi; ++j) {
        const double y = j * h;
        const double m = std::norm(p.radial_value(x * x + y * y));
        (in_x && j >= -n / 2 && j < n / 2 ? inside : outside) += m;
      }
    }
  }
  return {inside, outside};
}

}  // namespace

Field sample_profile(const InitialProfile& profile, const GridPtr& grid, double truncation_tol) {
  check_profile(profile, *grid);
  Field f(grid);
  const auto x = grid->coordinates();
  const int n = grid->n_per_dim();

  if (profile.kind == ProfileKind::single_mode) {
    const auto xi = grid->frequencies();
    const std::size_t k0 = grid->mode_index(profile.mode);
    const auto kidx = grid->unflatten(k0);
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
      const auto idx = grid->unflatten(flat);
      double phase = xi[kidx[0]] * x[idx[0]];
      if (grid->d() == 2) phase += xi[kidx[1]] * x[idx[1]];
      f[flat] = profile.amplitude * std::polar(1.0, phase);
    }
    return f;
  }

  if (profile.amplitude != std::complex<double>{0.0, 0.0}) {
    const auto [inside, outside] = inside_outside_mass(profile, *grid);
    if (outside > truncation_tol * (inside + outside)) {
      throw std::invalid_argument("profile too wide for the box: relative mass outside is " +
                                  std::to_string(outside / (inside + outside)));
    }
  }

  // x_{n-j} = -x_j exactly, so squared radii (and values) are reflection
  // symmetric bit for bit.
  if (grid->d() == 1) {
    for (int j = 0; j < n; ++j) f[j] = profile.radial_value(x[j] * x[j]);
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        f[static_cast<std::size_t>(i) * n + j] = profile.radial_value(x[i] * x[i] + x[j] * x[j]);
      }
    }
  }
  return f;
}

}  // namespace fnls
