#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fnls/gn.hpp"
#include "fnls/integrator.hpp"
#include "fnls/kernel.hpp"
#include "fnls/params.hpp"
#include "fnls/profile.hpp"

namespace fnls {

struct GridSpec {
  int n = 64;
  double box_length = 24.0;
  bool operator==(const GridSpec&) const = default;
};

struct OutputConfig {
  std::string timeseries = "timeseries.csv";
  std::string sweep = "sweep.jsonl";
  std::string plot;
  std::string svg;
  std::string run_id = "run";
  bool operator==(const OutputConfig&) const = default;
};

struct SweepConfig {
  std::vector<double> a_values{0.5, 1.0, 2.0, 4.0};
  double mass_scale = 1.0;
  int threads = 1;
  bool operator==(const SweepConfig&) const = default;
};

struct ScatteringConfig {
  std::vector<double> base_times{2.0, 4.0, 8.0};
  double horizon_factor = 2.0;
  double tolerance = 1e-3;
  bool operator==(const ScatteringConfig&) const = default;
};

struct GnConfig {
  SampleSpec samples;
  int held_out = 100;
  std::uint64_t held_out_seed = 7;
  bool operator==(const GnConfig&) const = default;
};

struct ThresholdConfig {
  double scale_lo = 0.05;
  double scale_hi = 3.0;
  int budget = 12;
  double t_end = 2.0;
  bool operator==(const ThresholdConfig&) const = default;
};

struct KernelConfig {
  std::vector<double> s_values{0.25, 0.5, 1.0};
  double a = 1.0;
  double t = 1.0;
  KernelQuadrature quadrature;
  bool operator==(const KernelConfig& o) const {
    return s_values == o.s_values && a == o.a && t == o.t && quadrature.d == o.quadrature.d &&
           quadrature.base_half_width == o.quadrature.base_half_width &&
           quadrature.base_decay_exponent == o.quadrature.base_decay_exponent &&
           quadrature.max_levels == o.quadrature.max_levels && quadrature.tolerance == o.quadrature.tolerance &&
           quadrature.max_points == o.quadrature.max_points;
  }
};

struct ConvergenceConfig {
  std::vector<double> dts{1.0 / 64, 1.0 / 128, 1.0 / 256};
  bool operator==(const ConvergenceConfig&) const = default;
};

struct VerifyConfig {
  std::vector<double> dts{0.02, 0.01, 0.005};
  double t_end = 1.0;
  double slope_target = 2.0;
  double slope_tolerance = 0.3;
  bool operator==(const VerifyConfig&) const = default;
};

/// Complete configuration of a run or experiment. Every field has a
/// default; parse_config fills in whatever the text leaves out.
struct RunConfig {
  ModelParams model = make_params(2, 0.8, 0.8, 1.0);
  GridSpec grid;
  InitialProfile profile;
  StepperConfig stepper{.dt = 0.01, .t_end = 5.0, .record_stride = 10, .snapshot_times = {}};
  OutputConfig output;
  SweepConfig sweep;
  ScatteringConfig scattering;
  GnConfig gn;
  ThresholdConfig threshold;
  KernelConfig kernel;
  ConvergenceConfig convergence;
  VerifyConfig verify;
  /// Non-fatal notes, e.g. parameters outside the theorems' hypotheses.
  std::vector<std::string> warnings;

  bool operator==(const RunConfig&) const = default;
};

/// The damped gaussian used by `simulate` and `verify` without --config.
RunConfig default_config();

/// Parses the YAML configuration text. Sections `model`, `grid` and
/// `profile` are required. Throws ConfigError with a line/column for syntax
/// errors and with the key path for duplicate, unknown or invalid keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// Canonical YAML text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// 16 hex digits of FNV-1a over the canonical serialization, with the
/// output block (paths, run id) left out.
std::string config_hash(const RunConfig& config);

/// Hypothesis warnings for a parameter set (range of α, Theorem 1/2
/// regimes, exploratory d = 1).
std::vector<std::string> hypothesis_warnings(const ModelParams& params);

}  // namespace fnls
