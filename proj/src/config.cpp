#include "fnls/config.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "fnls/error.hpp"

namespace fnls {

namespace {

// A YAML mapping being consumed key by key. Reading marks keys as used;
// finish() rejects whatever is left over.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) {
      const auto mark = node_.Mark();
      throw ConfigError("'" + path_ + "' must be a mapping", path_, mark.line + 1, mark.column + 1);
    }
    std::set<std::string> seen;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen.insert(key).second) {
        const auto mark = kv.first.Mark();
        throw ConfigError(fmt::format("duplicate key '{}' at line {}", qualified(key), mark.line + 1),
                          qualified(key), mark.line + 1, mark.column + 1);
      }
    }
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  template <typename T>
  void get(const std::string& key, T& out) {
    used_.insert(key);
    const YAML::Node value = node_[key];
    if (!value) return;
    try {
      out = value.as<T>();
    } catch (const YAML::Exception&) {
      throw_bad(key, value);
    }
  }

  void get_list(const std::string& key, std::vector<double>& out) {
    used_.insert(key);
    const YAML::Node value = node_[key];
    if (!value) return;
    if (!value.IsSequence()) throw_bad(key, value);
    try {
      out = value.as<std::vector<double>>();
    } catch (const YAML::Exception&) {
      throw_bad(key, value);
    }
  }

  void get_complex(const std::string& key, std::complex<double>& out) {
    used_.insert(key);
    const YAML::Node value = node_[key];
    if (!value) return;
    try {
      if (value.IsSequence() && value.size() == 2) {
        out = {value[0].as<double>(), value[1].as<double>()};
      } else {
        out = {value.as<double>(), 0.0};
      }
    } catch (const YAML::Exception&) {
      throw_bad(key, value);
    }
  }

  void get_mode(const std::string& key, std::array<int, 2>& out) {
    used_.insert(key);
    const YAML::Node value = node_[key];
    if (!value) return;
    try {
      if (value.IsSequence() && (value.size() == 1 || value.size() == 2)) {
        out = {value[0].as<int>(), value.size() == 2 ? value[1].as<int>() : 0};
      } else {
        out = {value.as<int>(), 0};
      }
    } catch (const YAML::Exception&) {
      throw_bad(key, value);
    }
  }

  Section child(const std::string& key) {
    used_.insert(key);
    return Section(node_[key], qualified(key));
  }

  void finish() const {
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.contains(key)) {
        const auto mark = kv.first.Mark();
        throw ConfigError(fmt::format("unknown key '{}' at line {}, column {}", qualified(key), mark.line + 1,
                                      mark.column + 1),
                          qualified(key), mark.line + 1, mark.column + 1);
      }
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    const YAML::Node value = node_[key];
    const auto mark = value ? value.Mark() : node_.Mark();
    throw ConfigError(fmt::format("invalid value for '{}': {}", qualified(key), why), qualified(key),
                      mark.line + 1, mark.column + 1);
  }

  std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  [[noreturn]] void throw_bad(const std::string& key, const YAML::Node& value) const {
    const auto mark = value.Mark();
    throw ConfigError(fmt::format("invalid value for '{}' at line {}", qualified(key), mark.line + 1),
                      qualified(key), mark.line + 1, mark.column + 1);
  }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> used_;
};

void require(Section& root, const std::string& key) {
  if (!root.has(key)) throw ConfigError("missing required section '" + key + "'", key);
}

template <typename Fn>
void validated(Section& sec, const std::string& key, Fn&& check) {
  try {
    check();
  } catch (const std::invalid_argument& e) {
    sec.fail(key, e.what());
  }
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out + "]";
}

std::string quoted(const std::string& s) {
  YAML::Emitter e;
  e << YAML::DoubleQuoted << s;
  return e.c_str();
}

std::string boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<std::string> hypothesis_warnings(const ModelParams& p) {
  std::vector<std::string> w;
  if (!p.valid) {
    w.push_back(fmt::format("alpha = {} lies outside ({:.6g}, 1); the global-existence theory does not apply",
                            p.alpha, alpha_lower_bound(p.d)));
  }
  if (p.d == 1) w.push_back("d = 1 is an exploration mode; the theorems assume d >= 2");
  if (p.a == 0.0) w.push_back("a = 0: undamped equation, mass is conserved and blow-up is possible");
  if (p.s < p.alpha && p.s + p.alpha < 1.0) {
    w.push_back("Theorem 1 hypotheses not met: s < alpha requires s + alpha >= 1");
  }
  return w;
}

RunConfig default_config() {
  RunConfig c;
  c.warnings = hypothesis_warnings(c.model);
  return c;
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root_node;
  try {
    root_node = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("syntax error at line {}, column {}: {}", e.mark.line + 1, e.mark.column + 1, e.msg),
                      "", e.mark.line + 1, e.mark.column + 1);
  }
  if (!root_node || root_node.IsNull()) throw ConfigError("empty configuration", "");

  RunConfig c;
  Section root(root_node, "");
  require(root, "model");
  require(root, "grid");
  require(root, "profile");

  {
    Section m = root.child("model");
    if (!m.has("d")) m.fail("d", "required");
    if (!m.has("alpha")) m.fail("alpha", "required");
    int d = 2;
    double alpha = 0.8;
    m.get("d", d);
    m.get("alpha", alpha);
    double s = alpha;
    double a = 1.0;
    m.get("s", s);
    m.get("a", a);
    validated(m, d != 1 && d != 2 ? "d" : !(alpha > 0.0) ? "alpha" : !(s >= 0.0) ? "s" : "a",
              [&] { c.model = make_params(d, alpha, s, a); });
    m.finish();
  }
  {
    Section g = root.child("grid");
    g.get("n", c.grid.n);
    g.get("L", c.grid.box_length);
    validated(g, "n", [&] { make_grid(c.grid.n, 1.0, c.model.d); });
    if (!(c.grid.box_length > 0.0)) g.fail("L", "box length must be positive");
    g.finish();
  }
  {
    Section p = root.child("profile");
    std::string kind = to_string(c.profile.kind);
    p.get("kind", kind);
    validated(p, "kind", [&] { c.profile.kind = profile_kind_from_string(kind); });
    p.get_complex("amplitude", c.profile.amplitude);
    p.get("width", c.profile.width);
    p.get("order", c.profile.order);
    p.get("radius", c.profile.radius);
    p.get_mode("mode", c.profile.mode);
    if (!(c.profile.width > 0.0)) p.fail("width", "must be positive");
    if (c.profile.kind == ProfileKind::ring && c.model.d != 2) p.fail("kind", "ring profiles need d = 2");
    p.finish();
  }
  if (root.has("stepper")) {
    Section s = root.child("stepper");
    s.get("dt", c.stepper.dt);
    s.get("t_end", c.stepper.t_end);
    s.get("dealias", c.stepper.dealias);
    s.get("record_stride", c.stepper.record_stride);
    s.get("blowup_threshold", c.stepper.blowup_threshold);
    s.get("adaptive_tolerance", c.stepper.adaptive_tolerance);
    s.get_list("snapshot_times", c.stepper.snapshot_times);
    if (!(c.stepper.dt > 0.0)) s.fail("dt", "must be positive");
    if (!(c.stepper.t_end >= 0.0)) s.fail("t_end", "must be non-negative");
    if (c.stepper.record_stride < 1) s.fail("record_stride", "must be at least 1");
    if (!(c.stepper.blowup_threshold > 1.0)) s.fail("blowup_threshold", "must exceed 1");
    if (!(c.stepper.adaptive_tolerance >= 0.0)) s.fail("adaptive_tolerance", "must be non-negative");
    s.finish();
  }
  if (root.has("output")) {
    Section o = root.child("output");
    o.get("timeseries", c.output.timeseries);
    o.get("sweep", c.output.sweep);
    o.get("plot", c.output.plot);
    o.get("svg", c.output.svg);
    o.get("run_id", c.output.run_id);
    o.finish();
  }
  if (root.has("sweep")) {
    Section s = root.child("sweep");
    s.get_list("a_values", c.sweep.a_values);
    s.get("mass_scale", c.sweep.mass_scale);
    s.get("threads", c.sweep.threads);
    for (double a : c.sweep.a_values) {
      if (!(a >= 0.0)) s.fail("a_values", "friction values must be non-negative");
    }
    if (c.sweep.threads < 1) s.fail("threads", "must be at least 1");
    s.finish();
  }
  if (root.has("scattering")) {
    Section s = root.child("scattering");
    s.get_list("t0", c.scattering.base_times);
    s.get("horizon_factor", c.scattering.horizon_factor);
    s.get("tolerance", c.scattering.tolerance);
    if (!(c.scattering.horizon_factor >= 1.0)) s.fail("horizon_factor", "must be at least 1");
    s.finish();
  }
  if (root.has("gn")) {
    Section s = root.child("gn");
    s.get("random_samples", c.gn.samples.random_samples);
    s.get("refine_evaluations", c.gn.samples.refine_evaluations);
    s.get("max_components", c.gn.samples.max_components);
    s.get("seed", c.gn.samples.seed);
    s.get("min_width", c.gn.samples.min_width);
    s.get("max_width", c.gn.samples.max_width);
    s.get("allow_rings", c.gn.samples.allow_rings);
    s.get("allow_super_gaussians", c.gn.samples.allow_super_gaussians);
    s.get("held_out", c.gn.held_out);
    s.get("held_out_seed", c.gn.held_out_seed);
    if (c.gn.samples.random_samples < 1) s.fail("random_samples", "must be at least 1");
    if (c.gn.samples.max_components < 1) s.fail("max_components", "must be at least 1");
    if (!(c.gn.samples.min_width > 0.0) || !(c.gn.samples.max_width >= c.gn.samples.min_width)) {
      s.fail("min_width", "need 0 < min_width <= max_width");
    }
    s.finish();
  }
  if (root.has("threshold")) {
    Section s = root.child("threshold");
    s.get("scale_lo", c.threshold.scale_lo);
    s.get("scale_hi", c.threshold.scale_hi);
    s.get("budget", c.threshold.budget);
    s.get("t_end", c.threshold.t_end);
    if (!(c.threshold.scale_hi > c.threshold.scale_lo) || !(c.threshold.scale_lo >= 0.0)) {
      s.fail("scale_hi", "need 0 <= scale_lo < scale_hi");
    }
    s.finish();
  }
  if (root.has("kernel")) {
    Section s = root.child("kernel");
    s.get_list("s_values", c.kernel.s_values);
    s.get("a", c.kernel.a);
    s.get("t", c.kernel.t);
    s.get("d", c.kernel.quadrature.d);
    s.get("base_half_width", c.kernel.quadrature.base_half_width);
    s.get("base_decay_exponent", c.kernel.quadrature.base_decay_exponent);
    s.get("max_levels", c.kernel.quadrature.max_levels);
    s.get("tolerance", c.kernel.quadrature.tolerance);
    s.get("max_points", c.kernel.quadrature.max_points);
    if (c.kernel.quadrature.d != 1 && c.kernel.quadrature.d != 2) s.fail("d", "must be 1 or 2");
    s.finish();
  }
  if (root.has("convergence")) {
    Section s = root.child("convergence");
    s.get_list("dts", c.convergence.dts);
    s.finish();
  }
  if (root.has("verify")) {
    Section s = root.child("verify");
    s.get_list("dts", c.verify.dts);
    s.get("t_end", c.verify.t_end);
    s.get("slope_target", c.verify.slope_target);
    s.get("slope_tolerance", c.verify.slope_tolerance);
    s.finish();
  }
  root.finish();

  c.warnings = hypothesis_warnings(c.model);
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'", "");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& c) {
  std::string o;
  auto line = [&](const std::string& s) { o += s + "\n"; };
  line("model:");
  line(fmt::format("  d: {}", c.model.d));
  line("  alpha: " + num(c.model.alpha));
  line("  s: " + num(c.model.s));
  line("  a: " + num(c.model.a));
  line("grid:");
  line(fmt::format("  n: {}", c.grid.n));
  line("  L: " + num(c.grid.box_length));
  line("profile:");
  line("  kind: " + to_string(c.profile.kind));
  line("  amplitude: [" + num(c.profile.amplitude.real()) + ", " + num(c.profile.amplitude.imag()) + "]");
  line("  width: " + num(c.profile.width));
  line("  order: " + num(c.profile.order));
  line("  radius: " + num(c.profile.radius));
  line(fmt::format("  mode: [{}, {}]", c.profile.mode[0], c.profile.mode[1]));
  line("stepper:");
  line("  dt: " + num(c.stepper.dt));
  line("  t_end: " + num(c.stepper.t_end));
  line("  dealias: " + boolean(c.stepper.dealias));
  line(fmt::format("  record_stride: {}", c.stepper.record_stride));
  line("  blowup_threshold: " + num(c.stepper.blowup_threshold));
  line("  adaptive_tolerance: " + num(c.stepper.adaptive_tolerance));
  line("  snapshot_times: " + list(c.stepper.snapshot_times));
  line("output:");
  line("  timeseries: " + quoted(c.output.timeseries));
  line("  sweep: " + quoted(c.output.sweep));
  line("  plot: " + quoted(c.output.plot));
  line("  svg: " + quoted(c.output.svg));
  line("  run_id: " + quoted(c.output.run_id));
  line("sweep:");
  line("  a_values: " + list(c.sweep.a_values));
  line("  mass_scale: " + num(c.sweep.mass_scale));
  line(fmt::format("  threads: {}", c.sweep.threads));
  line("scattering:");
  line("  t0: " + list(c.scattering.base_times));
  line("  horizon_factor: " + num(c.scattering.horizon_factor));
  line("  tolerance: " + num(c.scattering.tolerance));
  line("gn:");
  line(fmt::format("  random_samples: {}", c.gn.samples.random_samples));
  line(fmt::format("  refine_evaluations: {}", c.gn.samples.refine_evaluations));
  line(fmt::format("  max_components: {}", c.gn.samples.max_components));
  line(fmt::format("  seed: {}", c.gn.samples.seed));
  line("  min_width: " + num(c.gn.samples.min_width));
  line("  max_width: " + num(c.gn.samples.max_width));
  line("  allow_rings: " + boolean(c.gn.samples.allow_rings));
  line("  allow_super_gaussians: " + boolean(c.gn.samples.allow_super_gaussians));
  line(fmt::format("  held_out: {}", c.gn.held_out));
  line(fmt::format("  held_out_seed: {}", c.gn.held_out_seed));
  line("threshold:");
  line("  scale_lo: " + num(c.threshold.scale_lo));
  line("  scale_hi: " + num(c.threshold.scale_hi));
  line(fmt::format("  budget: {}", c.threshold.budget));
  line("  t_end: " + num(c.threshold.t_end));
  line("kernel:");
  line("  s_values: " + list(c.kernel.s_values));
  line("  a: " + num(c.kernel.a));
  line("  t: " + num(c.kernel.t));
  line(fmt::format("  d: {}", c.kernel.quadrature.d));
  line("  base_half_width: " + num(c.kernel.quadrature.base_half_width));
  line("  base_decay_exponent: " + num(c.kernel.quadrature.base_decay_exponent));
  line(fmt::format("  max_levels: {}", c.kernel.quadrature.max_levels));
  line("  tolerance: " + num(c.kernel.quadrature.tolerance));
  line(fmt::format("  max_points: {}", c.kernel.quadrature.max_points));
  line("convergence:");
  line("  dts: " + list(c.convergence.dts));
  line("verify:");
  line("  dts: " + list(c.verify.dts));
  line("  t_end: " + num(c.verify.t_end));
  line("  slope_target: " + num(c.verify.slope_target));
  line("  slope_tolerance: " + num(c.verify.slope_tolerance));
  return o;
}

std::string config_hash(const RunConfig& config) {
  // Where results are written is not part of what was computed.
  RunConfig keyed = config;
  keyed.output = OutputConfig{};
  const std::string text = serialize_config(keyed);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace fnls
