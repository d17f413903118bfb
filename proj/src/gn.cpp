#include "fnls/gn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fnls/functionals.hpp"

namespace fnls {

namespace {

double component_value(const RadialComponent& c, double r) {
  const double rho = r / c.width;
  switch (c.shape) {
    case RadialComponent::Shape::gaussian:
      return std::exp(-0.5 * rho * rho);
    case RadialComponent::Shape::super_gaussian:
      return std::exp(-0.5 * std::pow(rho, 2.0 * c.shape_param));
    case RadialComponent::Shape::ring: {
      const double dr = rho - c.shape_param;
      return std::exp(-0.5 * dr * dr);
    }
  }
  return 0.0;
}

const char* shape_name(RadialComponent::Shape s) {
  switch (s) {
    case RadialComponent::Shape::gaussian: return "gaussian";
    case RadialComponent::Shape::super_gaussian: return "super-gaussian";
    case RadialComponent::Shape::ring: return "ring";
  }
  return "?";
}

using RatioFn = std::function<double(const Field&, const ModelParams&)>;

GNConstant estimate_running_max(const ModelParams& params, const GridPtr& grid, const SampleSpec& spec,
                                const RatioFn& ratio) {
  if (spec.random_samples < 1) throw std::invalid_argument("GN estimate needs at least one sample");
  GNConstant gn;
  gn.alpha = params.alpha;
  gn.d = params.d;
  RadialSample best;

  auto evaluate = [&](const RadialSample& sample) {
    const double r = ratio(sample.sample(grid), params);
    if (!std::isfinite(r)) {
      ++gn.skipped;
      return -std::numeric_limits<double>::infinity();
    }
    ++gn.samples;
    if (gn.history.empty() || r > gn.estimate) {
      gn.estimate = r;
      best = sample;
    }
    gn.history.push_back(gn.estimate);
    return r;
  };

  for (const auto& sample : draw_radial_samples(spec, spec.random_samples, spec.seed)) evaluate(sample);
  if (gn.history.empty()) return gn;

  // Compass search over the continuous parameters of the best sample.
  // Widths and shape parameters move multiplicatively, weights additively.
  double current = gn.estimate;
  RadialSample point = best;
  double step = 0.25;
  int budget = spec.refine_evaluations;
  while (budget > 0 && step > 1e-4) {
    bool improved = false;
    for (std::size_t c = 0; c < point.components.size() && budget > 0; ++c) {
      for (int which = 0; which < 3 && budget > 0; ++which) {
        if (which == 0 && c == 0) continue;  // first weight fixes the amplitude scale
        if (which == 2 && point.components[c].shape == RadialComponent::Shape::gaussian) continue;
        for (double dir : {1.0, -1.0}) {
          if (budget <= 0) break;
          RadialSample trial = point;
          auto& comp = trial.components[c];
          if (which == 0) comp.weight += dir * step;
          if (which == 1) comp.width *= 1.0 + dir * step;
          if (which == 2) comp.shape_param = std::max(0.05, comp.shape_param * (1.0 + dir * step));
          --budget;
          const double r = evaluate(trial);
          if (r > current) {
            current = r;
            point = std::move(trial);
            improved = true;
            break;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  gn.maximizer = best.describe();
  return gn;
}

}  // namespace

Field RadialSample::sample(const GridPtr& grid) const {
  Field f(grid);
  const auto x = grid->coordinates();
  const int n = grid->n_per_dim();
  auto value = [&](double r_sq) {
    const double r = std::sqrt(r_sq);
    double v = 0.0;
    for (const auto& c : components) v += c.weight * component_value(c, r);
    return v;
  };
  if (grid->d() == 1) {
    for (int j = 0; j < n; ++j) f[j] = value(x[j] * x[j]);
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) f[static_cast<std::size_t>(i) * n + j] = value(x[i] * x[i] + x[j] * x[j]);
    }
  }
  return f;
}

std::string RadialSample::describe() const {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (i > 0) os << " + ";
    os << c.weight << "*" << shape_name(c.shape) << "(w=" << c.width;
    if (c.shape != RadialComponent::Shape::gaussian) os << ", param=" << c.shape_param;
    os << ")";
  }
  return os.str();
}

std::vector<RadialSample> draw_radial_samples(const SampleSpec& spec, int count, std::uint64_t seed) {
  if (spec.max_components < 1) throw std::invalid_argument("samples need at least one component");
  if (!(spec.min_width > 0.0) || !(spec.max_width >= spec.min_width)) {
    throw std::invalid_argument("invalid sample width range");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> ncomp(1, spec.max_components);
  const double log_lo = std::log(spec.min_width);
  const double log_hi = std::log(spec.max_width);

  std::vector<RadialSample> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    RadialSample sample;
    const int k = ncomp(rng);
    for (int j = 0; j < k; ++j) {
      RadialComponent c;
      const double pick = unit(rng);
      if (pick < 0.5 || (!spec.allow_rings && !spec.allow_super_gaussians)) {
        c.shape = RadialComponent::Shape::gaussian;
      } else if (pick < 0.75 && spec.allow_super_gaussians) {
        c.shape = RadialComponent::Shape::super_gaussian;
        c.shape_param = 1.2 + 1.8 * unit(rng);
      } else if (spec.allow_rings) {
        c.shape = RadialComponent::Shape::ring;
        c.shape_param = 0.5 + 2.5 * unit(rng);
      } else {
        c.shape = RadialComponent::Shape::super_gaussian;
        c.shape_param = 1.2 + 1.8 * unit(rng);
      }
      c.width = std::exp(log_lo + (log_hi - log_lo) * unit(rng));
      c.weight = j == 0 ? 1.0 : 2.0 * unit(rng) - 1.0;
      sample.components.push_back(c);
    }
    out.push_back(std::move(sample));
  }
  return out;
}

double gn_ratio(const Field& u, const ModelParams& params) {
  const double h_alpha = fractional_seminorm_sq(u, params.alpha);
  const double m_sq = mass(u).squared;
  const double den = h_alpha * std::pow(m_sq, 2.0 * params.alpha / params.d);
  if (!(den > 0.0) || !std::isfinite(den)) return std::numeric_limits<double>::quiet_NaN();
  return lp_norm_pow(u, params.theta) / den;
}

double coupling_ratio(const Field& u, const ModelParams& params) {
  const ModelParams unit_friction = make_params(params.d, params.alpha, params.s, 1.0);
  const EnergyRate rate = energy_identity_rhs(u, unit_friction);
  const double h_sa = -rate.dissipation;
  const double den = h_sa * std::pow(mass(u).squared, 2.0 * params.alpha / params.d);
  if (!(den > 0.0) || !std::isfinite(den)) return std::numeric_limits<double>::quiet_NaN();
  return rate.coupling_re / den;
}

GNConstant gn_constant_estimate(const ModelParams& params, const GridPtr& grid, const SampleSpec& spec) {
  return estimate_running_max(params, grid, spec, gn_ratio);
}

GNConstant coupling_constant_estimate(const ModelParams& params, const GridPtr& grid, const SampleSpec& spec) {
  return estimate_running_max(params, grid, spec, coupling_ratio);
}

double energy_bound_constant(const GNConstant& gn, const ModelParams& params) {
  return gn.estimate * params.d / (4.0 * params.alpha + 2.0 * params.d);
}

double coercivity_threshold(const GNConstant& gn, const ModelParams& params) {
  const double c = energy_bound_constant(gn, params);
  return std::pow(1.0 / (2.0 * c), params.d / (4.0 * params.alpha));
}

double monotonicity_threshold(const GNConstant& coupling, const ModelParams& params) {
  return std::pow(coupling.estimate, -params.d / (4.0 * params.alpha));
}

EnergyBoundCheck energy_lower_bound_check(const Field& u, const ModelParams& params, const GNConstant& gn) {
  EnergyBoundCheck check;
  const double h_alpha = fractional_seminorm_sq(u, params.alpha);
  const double m_sq = mass(u).squared;
  const double c = energy_bound_constant(gn, params);
  check.lhs = energy(u, params);
  check.rhs = h_alpha * (0.5 - c * std::pow(m_sq, 2.0 * params.alpha / params.d));
  const double scale = std::max({std::abs(check.lhs), std::abs(check.rhs), 0.5 * h_alpha});
  check.satisfied = check.lhs >= check.rhs - kEnergyBoundSlack * scale;
  return check;
}

}  // namespace fnls
