#include "fnls/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "fnls/error.hpp"

namespace fnls {

namespace {

struct LevelValue {
  double l1 = 0.0;
  double min_to_max = 0.0;
};

std::size_t next_power_of_two(double x) {
  std::size_t n = 2;
  while (static_cast<double>(n) < x) n *= 2;
  return n;
}

// Periodic box [-R, R)^d sampled with spacing π/ξ_max. The Riemann sum of
// the inverse Fourier integral over the ξ lattice equals, by Poisson
// summation, the periodization of H over the box.
LevelValue evaluate_level(double s, double at, double half_width, double xi_max, int d,
                          std::size_t max_points) {
  const double period = 2.0 * half_width;
  const double dxi = 2.0 * std::numbers::pi / period;
  const auto n = next_power_of_two(2.0 * xi_max / dxi);
  const std::size_t total = d == 1 ? n : n * n;
  if (total > max_points) {
    throw ConvergenceError("kernel quadrature needs " + std::to_string(total) + " points, above the limit of " +
                           std::to_string(max_points));
  }
  const double dx = period / static_cast<double>(n);

  std::vector<double> symbol(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    symbol[k] = kk * dxi;
  }

  std::vector<std::complex<double>> spec(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double xi_sq = 0.0;
    if (d == 1) {
      xi_sq = symbol[flat] * symbol[flat];
    } else {
      const double a = symbol[flat / n];
      const double b = symbol[flat % n];
      xi_sq = a * a + b * b;
    }
    spec[flat] = std::exp(-at * std::pow(xi_sq, s));
  }
  std::vector<std::complex<double>> phys(total);
  detail::execute_fft(static_cast<int>(n), d, -1, spec, phys);

  const double weight = std::pow(dxi, d);
  double sum = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& v : phys) {
    const double h = v.real() * weight;
    sum += std::abs(h);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  return {sum * std::pow(dx, d), hi > 0.0 ? lo / hi : 0.0};
}

}  // namespace

KernelL1Result kernel_l1(double s_order, double t, double a_coef, const KernelQuadrature& quad) {
  if (!(s_order > 0.0)) throw std::invalid_argument("kernel order s must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("kernel time t must be positive");
  if (!(a_coef > 0.0)) throw std::invalid_argument("kernel friction a must be positive");
  if (quad.d != 1 && quad.d != 2) throw std::invalid_argument("kernel dimension must be 1 or 2");
  if (quad.max_levels < 2) throw std::invalid_argument("kernel refinement needs at least two levels");

  const double at = a_coef * t;
  // Self-similar length: H_{a,s}(t, x) = ℓ^{-d} H_{1,s}(1, x/ℓ).
  const double ell = std::pow(at, 1.0 / (2.0 * s_order));
  const double xi_max = std::pow(quad.base_decay_exponent / at, 1.0 / (2.0 * s_order));

  KernelL1Result result;
  for (int level = 0; level < quad.max_levels; ++level) {
    const double half_width = quad.base_half_width * ell * std::ldexp(1.0, level);
    const LevelValue lv = evaluate_level(s_order, at, half_width, xi_max, quad.d, quad.max_points);
    result.level_values.push_back(lv.l1);
    result.min_to_max = lv.min_to_max;
    result.levels_used = level + 1;
    if (level > 0) {
      const double prev = result.level_values[level - 1];
      result.relative_change = std::abs(lv.l1 - prev) / std::abs(lv.l1);
      if (result.relative_change <= quad.tolerance) {
        result.value = lv.l1;
        result.normalized = lv.l1 / std::pow(2.0 * std::numbers::pi, quad.d);
        return result;
      }
    }
  }
  throw ConvergenceError("kernel L1 norm did not settle: last relative change " +
                         std::to_string(result.relative_change));
}

}  // namespace fnls
