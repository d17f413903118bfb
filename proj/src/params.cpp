#include "fnls/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fnls {

double alpha_lower_bound(int d) { return static_cast<double>(d) / (2.0 * d - 1.0); }

ModelParams make_params(int d, double alpha, double s, double a) {
  if (d != 1 && d != 2) {
    throw std::invalid_argument("unsupported dimension d = " + std::to_string(d) + " (expected 1 or 2)");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("dispersion order alpha must be positive");
  }
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("dissipation order s must be non-negative");
  }
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("friction coefficient a must be non-negative");
  }
  ModelParams m;
  m.d = d;
  m.alpha = alpha;
  m.s = s;
  m.a = a;
  m.p = 1.0 + 4.0 * alpha / d;
  m.theta = 4.0 * alpha / d + 2.0;
  m.valid = alpha > alpha_lower_bound(d) && alpha < 1.0;
  return m;
}

}  // namespace fnls
