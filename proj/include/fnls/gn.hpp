#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/params.hpp"

namespace fnls {

/// A radial test function built as a sum of shaped bumps
///   u(x) = Σ_j c_j g_j(|x| / w_j),
/// each bump being a gaussian, super-gaussian or ring.
struct RadialComponent {
  enum class Shape { gaussian, super_gaussian, ring };
  Shape shape = Shape::gaussian;
  double weight = 1.0;
  double width = 1.0;
  /// super-gaussian order m, or ring radius in units of width.
  double shape_param = 2.0;
};

struct RadialSample {
  std::vector<RadialComponent> components;
  Field sample(const GridPtr& grid) const;
  std::string describe() const;
};

/// Random radial sample generator shared by the estimators and the
/// held-out checks.
struct SampleSpec {
  int random_samples = 200;
  /// Extra evaluations spent on a pattern search around the best sample.
  int refine_evaluations = 120;
  int max_components = 3;
  std::uint64_t seed = 1;
  /// Widths are drawn log-uniformly in [min_width, max_width].
  double min_width = 0.6;
  double max_width = 2.0;
  bool allow_rings = true;
  bool allow_super_gaussians = true;
  bool operator==(const SampleSpec&) const = default;
};

/// Draws `count` random radial samples from the spec's family using `seed`.
std::vector<RadialSample> draw_radial_samples(const SampleSpec& spec, int count, std::uint64_t seed);

/// Running-maximum estimate of a scale-invariant ratio over sampled
/// profiles. `estimate` is a lower bound for the sharp constant.
struct GNConstant {
  double alpha = 0.0;
  int d = 0;
  double estimate = 0.0;
  int samples = 0;
  int skipped = 0;
  std::string maximizer;
  /// Running maximum after each evaluated sample.
  std::vector<double> history;
};

/// ∫|u|^θ / (‖(-Δ)^{α/2}u‖² ‖u‖_{L²}^{4α/d}); NaN if the denominator is 0.
double gn_ratio(const Field& u, const ModelParams& params);

/// Re∫((-Δ)^s u)|u|^{p-1}ū / (‖(-Δ)^{(s+α)/2}u‖² ‖u‖_{L²}^{4α/d}); NaN if
/// the denominator is 0. The energy rate is -a‖(-Δ)^{(s+α)/2}u‖²(1 - ratio·m^{4α/d}).
double coupling_ratio(const Field& u, const ModelParams& params);

/// Best constant A in ∫|u|^θ ≤ A‖(-Δ)^{α/2}u‖²‖u‖^{4α/d} over the sample set.
GNConstant gn_constant_estimate(const ModelParams& params, const GridPtr& grid, const SampleSpec& spec);
/// Best constant B in Re∫((-Δ)^s u)|u|^{p-1}ū ≤ B‖(-Δ)^{(s+α)/2}u‖²‖u‖^{4α/d}.
GNConstant coupling_constant_estimate(const ModelParams& params, const GridPtr& grid,
                                      const SampleSpec& spec);

/// C = A d/(4α+2d), the constant of the energy lower bound.
double energy_bound_constant(const GNConstant& gn, const ModelParams& params);
/// Mass below which the energy is coercive: (1/(2C))^{d/(4α)}.
double coercivity_threshold(const GNConstant& gn, const ModelParams& params);
/// Mass below which dE/dt ≤ 0 is guaranteed by the coupling constant:
/// B^{-d/(4α)}. Empirical: B is a lower estimate, so this overestimates.
double monotonicity_threshold(const GNConstant& coupling, const ModelParams& params);

struct EnergyBoundCheck {
  double lhs = 0.0;   // E(u)
  double rhs = 0.0;   // ‖(-Δ)^{α/2}u‖² (½ - C‖u‖^{4α/d})
  bool satisfied = true;
};

inline constexpr double kEnergyBoundSlack = 1e-12;

EnergyBoundCheck energy_lower_bound_check(const Field& u, const ModelParams& params, const GNConstant& gn);

}  // namespace fnls
