#include "fnls/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fnls/analysis.hpp"
#include "fnls/config.hpp"
#include "fnls/error.hpp"
#include "fnls/functionals.hpp"
#include "fnls/gn.hpp"
#include "fnls/kernel.hpp"
#include "fnls/output.hpp"

namespace fnls {

namespace {

double parse_exponent(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity" || t == "oo") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

std::string fmt_exp(double v) { return std::isinf(v) ? "inf" : fmt::format("{:.6g}", v); }

RunConfig load(const std::string& path, std::ostream& err) {
  RunConfig cfg = path.empty() ? default_config() : load_config_file(path);
  for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';
  return cfg;
}

GridPtr grid_of(const RunConfig& cfg) { return make_grid(cfg.grid.n, cfg.grid.box_length, cfg.model.d); }

// Hash identifying one sweep point's setup, independent of which a-values
// a particular invocation asks for.
std::string sweep_hash(RunConfig cfg) {
  cfg.sweep.a_values.clear();
  cfg.sweep.threads = 1;
  cfg.output = OutputConfig{};
  return config_hash(cfg);
}

struct Options {
  std::string config;
  std::string out;
  std::string plot;
  std::string svg;
  std::string run_id;
  double dt = 0.0;
  double t_end = -1.0;
  int d = 2;
  double gamma = 0.0;
  std::string q, r;
  std::vector<double> list;
  int threads = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  bool coupling = false;
  double kt = 0.0, ka = 0.0;
  int kd = 0;
};

void apply_stepper_overrides(RunConfig& cfg, const Options& o) {
  if (o.dt > 0.0) cfg.stepper.dt = o.dt;
  if (o.t_end >= 0.0) cfg.stepper.t_end = o.t_end;
  if (!o.run_id.empty()) cfg.output.run_id = o.run_id;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(o.config, err);
  apply_stepper_overrides(cfg, o);
  if (!o.out.empty()) cfg.output.timeseries = o.out;
  if (!o.plot.empty()) cfg.output.plot = o.plot;
  if (!o.svg.empty()) cfg.output.svg = o.svg;

  const auto grid = grid_of(cfg);
  const Trajectory traj = evolve(sample_profile(cfg.profile, grid), cfg.model, cfg.stepper);
  const std::string hash = config_hash(cfg);

  if (cfg.output.timeseries == "-") {
    write_timeseries(out, traj, cfg.output.run_id, hash);
  } else {
    write_timeseries(cfg.output.timeseries, traj, cfg.output.run_id, hash);
  }
  const auto table = timeseries_table(traj);
  if (!cfg.output.plot.empty()) emit_plotdata(table, "t", {"mass_sq", "energy"}, cfg.output.plot);
  if (!cfg.output.svg.empty()) write_svg(table, "t", {"mass_sq", "energy"}, cfg.output.svg, cfg.output.run_id);

  const auto& last = traj.records.back();
  err << fmt::format("status={} steps={} t={:.6g} mass_sq={:.10g} energy={:.10g} hash={}\n", to_string(traj.status),
                     traj.steps, last.t, last.mass_sq, last.energy, hash);
  return traj.status == RunStatus::instability ? kExitCheckFailed : kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(o.config, err);
  apply_stepper_overrides(cfg, o);
  if (!o.list.empty()) cfg.sweep.a_values = o.list;
  if (o.threads > 0) cfg.sweep.threads = o.threads;
  if (!o.out.empty()) cfg.output.sweep = o.out;
  if (!o.plot.empty()) cfg.output.plot = o.plot;
  if (!o.svg.empty()) cfg.output.svg = o.svg;
  const std::string hash = sweep_hash(cfg);
  const std::string& path = cfg.output.sweep;

  // Resume: points already present for this setup are not recomputed.
  std::vector<SweepResult> done;
  std::set<double> have;
  {
    std::ifstream in(path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || j.value("config_hash", "") != hash) continue;
      auto r = parse_sweep_record(line);
      if (have.insert(r.a).second) done.push_back(r);
    }
  }
  std::vector<double> todo;
  for (double a : cfg.sweep.a_values) {
    if (!have.contains(a)) todo.push_back(a);
  }
  if (!done.empty()) err << fmt::format("resuming: {} point(s) already in {}\n", done.size(), path);

  std::ofstream sink(path, std::ios::app);
  if (!sink) throw IoError("cannot open '" + path + "' for writing");
  SweepJob job{cfg.model, cfg.profile, grid_of(cfg), cfg.stepper, cfg.sweep.mass_scale};
  auto fresh = sweep_damping(job, todo, cfg.sweep.threads, [&](const SweepResult& r) {
    sink << sweep_record_json(r, hash) << '\n';
    sink.flush();
  });
  if (!sink) throw IoError("write to '" + path + "' failed");

  std::vector<SweepResult> all = done;
  for (const auto& r : fresh) {
    if (std::find(cfg.sweep.a_values.begin(), cfg.sweep.a_values.end(), r.a) != cfg.sweep.a_values.end()) {
      all.push_back(r);
    }
  }
  std::erase_if(all, [&](const SweepResult& r) {
    return std::find(cfg.sweep.a_values.begin(), cfg.sweep.a_values.end(), r.a) == cfg.sweep.a_values.end();
  });
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.a < y.a; });

  out << fmt::format("{:>10} {:>9} {:>16} {:>14} {:>14} {:>14} {:>14}\n", "a", "outcome", "status",
                     "strichartz_acc", "strichartz_nrm", "peak_h_alpha", "final_mass_sq");
  for (const auto& r : all) {
    out << fmt::format("{:>10.6g} {:>9} {:>16} {:>14.8g} {:>14.8g} {:>14.8g} {:>14.8g}\n", r.a, to_string(r.outcome),
                       to_string(r.status), r.strichartz_acc, r.strichartz_norm, r.peak_h_alpha, r.final_mass_sq);
  }
  out << "accumulator decreasing in a: " << (accumulators_decreasing(all) ? "yes" : "no") << '\n';

  if (!all.empty()) {
    const auto table = sweep_table(all);
    if (!cfg.output.plot.empty()) emit_plotdata(table, "a", {"strichartz_acc"}, cfg.output.plot);
    if (!cfg.output.svg.empty()) write_svg(table, "a", {"strichartz_acc"}, cfg.output.svg, "Strichartz accumulator");
  }
  return kExitOk;
}

std::string verdict(const StrichartzExponents& e) {
  if (!e.admissible) return "not admissible";
  return e.boundary ? "admissible (boundary)" : "admissible (interior)";
}

int cmd_admissible(const Options& o, std::ostream& out, std::ostream&) {
  if (!o.q.empty() || !o.r.empty()) {
    if (o.q.empty() || o.r.empty()) throw CLI::ValidationError("admissible", "--q and --r go together");
    const auto e = check_admissible(parse_exponent(o.q), parse_exponent(o.r), o.d, o.gamma);
    out << verdict(e) << '\n';
    out << fmt::format("d={} gamma={:.6g} q={} r={} clause1={} clause2={} dual_q'={} dual_r'={} scaling={}\n", e.d,
                       e.gamma, fmt_exp(e.q), fmt_exp(e.r), e.clause1, e.clause2, fmt_exp(e.q_dual_prime),
                       fmt_exp(e.r_dual_prime), e.scaling_ok ? "ok" : "off");
    return e.admissible ? kExitOk : kExitCheckFailed;
  }
  const double inf = std::numeric_limits<double>::infinity();
  const double qmin = (4.0 * o.d + 2.0) / (2.0 * o.d - 1.0);
  out << fmt::format("d={} gamma={:.6g} q_min={:.6g}\n", o.d, o.gamma, qmin);
  out << fmt::format("{:>8} {:>8} {:>8} {:>8} {}\n", "q", "r", "clause1", "clause2", "verdict");
  for (double q : {2.0, 3.0, qmin, 4.0, 6.0, 8.0, 16.0, inf}) {
    for (double r : {2.0, 3.0, 4.0, 6.0, 8.0, inf}) {
      const auto e = check_admissible(q, r, o.d, o.gamma);
      out << fmt::format("{:>8} {:>8} {:>8} {:>8} {}\n", fmt_exp(q), fmt_exp(r), e.clause1, e.clause2, verdict(e));
    }
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(o.config, err);
  if (!o.list.empty()) cfg.verify.dts = o.list;
  if (o.t_end >= 0.0) cfg.verify.t_end = o.t_end;
  const auto grid = grid_of(cfg);
  const Field u0 = sample_profile(cfg.profile, grid);

  std::vector<double> dts, mass_res, energy_res;
  bool completed = true;
  out << fmt::format("{:>10} {:>16} {:>16}\n", "dt", "max|mass_res|", "max|energy_res|");
  for (double dt : cfg.verify.dts) {
    StepperConfig sc = cfg.stepper;
    sc.dt = dt;
    sc.t_end = cfg.verify.t_end;
    sc.record_stride = 1;
    sc.snapshot_times.clear();
    sc.adaptive_tolerance = 0.0;
    const auto traj = evolve(u0, cfg.model, sc);
    completed = completed && traj.status == RunStatus::completed;
    double m = 0.0, e = 0.0;
    for (const auto& r : traj.records) {
      if (std::isfinite(r.mass_resid)) m = std::max(m, std::abs(r.mass_resid));
      if (std::isfinite(r.energy_resid)) e = std::max(e, std::abs(r.energy_resid));
    }
    dts.push_back(dt);
    mass_res.push_back(m);
    energy_res.push_back(e);
    out << fmt::format("{:>10.6g} {:>16.6e} {:>16.6e}\n", dt, m, e);
  }
  const double lo = cfg.verify.slope_target - cfg.verify.slope_tolerance;
  const double hi = cfg.verify.slope_target + cfg.verify.slope_tolerance;
  bool ok = completed;
  auto report = [&](const char* name, const std::vector<double>& res) {
    const bool resolved = std::all_of(res.begin(), res.end(), [](double v) { return v > 0.0; });
    const double slope = resolved ? log_log_slope(dts, res) : std::numeric_limits<double>::quiet_NaN();
    const bool pass = resolved && slope >= lo && slope <= hi;
    ok = ok && pass;
    out << fmt::format("{} residual slope {:.4f} (target {:.6g} +/- {:.6g}): {}\n", name, slope,
                       cfg.verify.slope_target, cfg.verify.slope_tolerance, pass ? "PASS" : "FAIL");
  };
  report("mass", mass_res);
  report("energy", energy_res);
  if (!completed) out << "run did not complete: FAIL\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_gn(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(o.config, err);
  if (o.samples > 0) cfg.gn.samples.random_samples = o.samples;
  if (o.seed > 0) cfg.gn.samples.seed = o.seed;
  const auto grid = grid_of(cfg);
  const auto gn = gn_constant_estimate(cfg.model, grid, cfg.gn.samples);
  out << fmt::format("d={} alpha={:.6g} samples={} skipped={}\n", gn.d, gn.alpha, gn.samples, gn.skipped);
  out << fmt::format("gn_estimate A = {}\n", format_double(gn.estimate));
  out << "maximizer: " << gn.maximizer << '\n';
  out << fmt::format("energy bound constant C = {:.10g}\n", energy_bound_constant(gn, cfg.model));
  out << fmt::format("coercivity mass threshold = {:.10g}\n", coercivity_threshold(gn, cfg.model));

  bool ok = true;
  if (cfg.gn.held_out > 0) {
    double worst = 0.0;
    for (const auto& s : draw_radial_samples(cfg.gn.samples, cfg.gn.held_out, cfg.gn.held_out_seed)) {
      const double v = gn_ratio(s.sample(grid), cfg.model);
      if (std::isfinite(v)) worst = std::max(worst, v);
    }
    ok = worst <= gn.estimate;
    out << fmt::format("held-out max ratio over {} draws (seed {}) = {:.10g}: {}\n", cfg.gn.held_out,
                       cfg.gn.held_out_seed, worst, ok ? "PASS" : "FAIL");
  }
  if (o.coupling) {
    const auto b = coupling_constant_estimate(cfg.model, grid, cfg.gn.samples);
    out << fmt::format("coupling estimate B = {}\n", format_double(b.estimate));
    out << "coupling maximizer: " << b.maximizer << '\n';
    out << fmt::format("monotonicity mass threshold = {:.10g}\n", monotonicity_threshold(b, cfg.model));
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_kernel(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(o.config, err);
  if (!o.list.empty()) cfg.kernel.s_values = o.list;
  if (o.kt > 0.0) cfg.kernel.t = o.kt;
  if (o.ka > 0.0) cfg.kernel.a = o.ka;
  if (o.kd > 0) cfg.kernel.quadrature.d = o.kd;
  bool ok = true;
  out << fmt::format("d={} a={:.6g} t={:.6g}\n", cfg.kernel.quadrature.d, cfg.kernel.a, cfg.kernel.t);
  out << fmt::format("{:>8} {:>20} {:>14} {:>12} {:>12} {:>7}\n", "s", "L1", "L1/(2pi)^d", "rel_change",
                     "min/max", "levels");
  for (double s : cfg.kernel.s_values) {
    try {
      const auto k = kernel_l1(s, cfg.kernel.t, cfg.kernel.a, cfg.kernel.quadrature);
      out << fmt::format("{:>8.6g} {:>20.14g} {:>14.10g} {:>12.3e} {:>12.3e} {:>7}\n", s, k.value, k.normalized,
                         k.relative_change, k.min_to_max, k.levels_used);
    } catch (const Error& e) {
      ok = false;
      out << fmt::format("{:>8.6g} {:>20}\n", s, "not converged");
      err << "s=" << s << ": " << e.what() << '\n';
    }
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_scattering(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(o.config, err);
  apply_stepper_overrides(cfg, o);
  if (!o.list.empty()) cfg.scattering.base_times = o.list;
  const auto& sc = cfg.scattering;
  auto& times = cfg.stepper.snapshot_times;
  double horizon = 0.0;
  for (double t0 : sc.base_times) {
    times.push_back(t0);
    times.push_back(t0 * sc.horizon_factor);
    horizon = std::max(horizon, t0 * sc.horizon_factor);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  cfg.stepper.t_end = std::max(cfg.stepper.t_end, horizon);

  const auto grid = grid_of(cfg);
  const auto traj = evolve(sample_profile(cfg.profile, grid), cfg.model, cfg.stepper);
  if (traj.status != RunStatus::completed) {
    err << "trajectory stopped early: " << to_string(traj.status) << '\n';
    return kExitCheckFailed;
  }
  const auto res = scattering_series(traj, sc.base_times, sc.horizon_factor, cfg.model, sc.tolerance);
  out << fmt::format("{:>10} {:>10} {:>18}\n", "t0", "t1", "defect");
  for (std::size_t i = 0; i < res.base_times.size(); ++i) {
    out << fmt::format("{:>10.6g} {:>10.6g} {:>18.10e}\n", res.base_times[i], res.horizons[i], res.defects[i]);
  }
  for (std::size_t i = 1; i < res.defects.size(); ++i) {
    out << fmt::format("ratio defect(t0={:.6g})/defect(t0={:.6g}) = {:.6g}\n", res.base_times[i],
                       res.base_times[i - 1], res.defects[i] / res.defects[i - 1]);
  }
  if (res.representative_time) {
    out << fmt::format("asymptotic state taken at t0 = {:.6g} (defect below {:.3g})\n", *res.representative_time,
                       sc.tolerance);
  } else {
    out << fmt::format("no defect below {:.3g}\n", sc.tolerance);
  }
  return kExitOk;
}

int cmd_convergence(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(o.config, err);
  apply_stepper_overrides(cfg, o);
  if (!o.list.empty()) cfg.convergence.dts = o.list;
  const auto grid = grid_of(cfg);
  const auto rep = convergence_study(sample_profile(cfg.profile, grid), cfg.model, cfg.convergence.dts, cfg.stepper);
  out << fmt::format("{:>12} {:>18} {:>10}\n", "dt", "|u_dt - u_dt/2|", "order");
  for (std::size_t i = 0; i < rep.differences.size(); ++i) {
    const std::string ord = i < rep.pairwise_orders.size() ? fmt::format("{:.4f}", rep.pairwise_orders[i]) : "";
    out << fmt::format("{:>12.6g} {:>18.10e} {:>10}\n", rep.dts[i], rep.differences[i], ord);
  }
  out << fmt::format("observed order {:.4f}{}\n", rep.order, rep.conclusive ? "" : " (inconclusive)");
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Damped fractional NLS simulator and diagnostics", "fnls"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&](CLI::App* c) { c->add_option("-c,--config", o.config, "YAML configuration file"); };

  auto* sim = app.add_subcommand("simulate", "evolve one trajectory and write the time-series CSV");
  add_config(sim);
  sim->add_option("-o,--out", o.out, "CSV path ('-' for standard output)");
  sim->add_option("--plot", o.plot, "plot-data path (t, mass_sq, energy)");
  sim->add_option("--svg", o.svg, "SVG chart path");
  sim->add_option("--dt", o.dt, "time step");
  sim->add_option("--t-end", o.t_end, "final time");
  sim->add_option("--run-id", o.run_id, "run identifier written into each row");

  auto* sweep = app.add_subcommand("sweep", "friction sweep, one JSONL record per value of a");
  add_config(sweep);
  sweep->add_option("-o,--out", o.out, "JSONL path (appended; existing points are reused)");
  sweep->add_option("--a", o.list, "friction values")->delimiter(',');
  sweep->add_option("-j,--threads", o.threads, "worker threads");
  sweep->add_option("--plot", o.plot, "plot-data path (a, strichartz_acc)");
  sweep->add_option("--svg", o.svg, "SVG chart path");
  sweep->add_option("--dt", o.dt, "time step");
  sweep->add_option("--t-end", o.t_end, "final time");

  auto* adm = app.add_subcommand("admissible", "classify Strichartz exponent pairs");
  adm->add_option("--d", o.d, "dimension")->check(CLI::PositiveNumber);
  adm->add_option("--gamma", o.gamma, "regularity shift");
  adm->add_option("--q", o.q, "time exponent (number or inf)");
  adm->add_option("--r", o.r, "space exponent (number or inf)");

  auto* ver = app.add_subcommand("verify", "mass/energy identity residuals at several time steps");
  add_config(ver);
  ver->add_option("--dts", o.list, "time steps")->delimiter(',');
  ver->add_option("--t-end", o.t_end, "final time");

  auto* gn = app.add_subcommand("gn-estimate", "estimate the Gagliardo-Nirenberg constant");
  add_config(gn);
  gn->add_option("--samples", o.samples, "random samples");
  gn->add_option("--seed", o.seed, "sampling seed");
  gn->add_flag("--coupling", o.coupling, "also estimate the energy-rate coupling constant");

  auto* ker = app.add_subcommand("kernel", "L1 norm of the dissipative kernel");
  add_config(ker);
  ker->add_option("--s", o.list, "orders s")->delimiter(',');
  ker->add_option("--t", o.kt, "time");
  ker->add_option("--a", o.ka, "friction");
  ker->add_option("--d", o.kd, "dimension (1 or 2)");

  auto* sca = app.add_subcommand("scattering", "scattering defect series");
  add_config(sca);
  sca->add_option("--t0", o.list, "base times")->delimiter(',');
  sca->add_option("--dt", o.dt, "time step");

  auto* conv = app.add_subcommand("convergence", "temporal convergence order of the splitting");
  add_config(conv);
  conv->add_option("--dts", o.list, "time steps, coarsest first")->delimiter(',');
  conv->add_option("--t-end", o.t_end, "final time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*sim) return cmd_simulate(o, out, err);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*adm) return cmd_admissible(o, out, err);
    if (*ver) return cmd_verify(o, out, err);
    if (*gn) return cmd_gn(o, out, err);
    if (*ker) return cmd_kernel(o, out, err);
    if (*sca) return cmd_scattering(o, out, err);
    if (*conv) return cmd_convergence(o, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace fnls
