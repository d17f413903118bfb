#include "fnls/output.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fnls/error.hpp"

namespace fnls {

namespace {

using nlohmann::json;

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void check_written(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("sweep record lacks '") + key + "'");
  if (it->is_null()) return std::numeric_limits<double>::quiet_NaN();
  return it->get<double>();
}

SweepOutcome outcome_from_string(const std::string& s) {
  for (auto o : {SweepOutcome::decayed, SweepOutcome::bounded, SweepOutcome::grew, SweepOutcome::blowup,
                 SweepOutcome::unstable}) {
    if (to_string(o) == s) return o;
  }
  throw std::invalid_argument("unknown sweep outcome '" + s + "'");
}

RunStatus status_from_string(const std::string& s) {
  for (auto st : {RunStatus::completed, RunStatus::blowup_detected, RunStatus::instability}) {
    if (to_string(st) == s) return st;
  }
  throw std::invalid_argument("unknown run status '" + s + "'");
}

const std::vector<double>& column(const PlotTable& table, const std::string& name) {
  const auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown column '" + name + "'");
  if (it->second.empty()) throw std::invalid_argument("column '" + name + "' is empty");
  return it->second;
}

void check_series(const PlotTable& table, const std::string& x, const std::vector<std::string>& ys) {
  if (ys.empty()) throw std::invalid_argument("no y columns requested");
  const auto n = column(table, x).size();
  for (const auto& y : ys) {
    if (column(table, y).size() != n) throw std::invalid_argument("column '" + y + "' length differs from '" + x + "'");
  }
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

void write_timeseries(std::ostream& out, const Trajectory& trajectory, const std::string& run_id,
                      const std::string& hash) {
  out << kTimeseriesHeader << '\n';
  for (const auto& r : trajectory.records) {
    for (double v : {r.t, r.mass_sq, r.energy, r.h_alpha_sq, r.h_s_sq, r.h_salpha_sq, r.lp_theta, r.strichartz_acc,
                     r.mass_resid, r.energy_resid}) {
      out << format_double(v) << ',';
    }
    out << run_id << ',' << hash << '\n';
  }
}

void write_timeseries(const std::string& path, const Trajectory& trajectory, const std::string& run_id,
                      const std::string& hash) {
  auto out = open_for_write(path);
  write_timeseries(static_cast<std::ostream&>(out), trajectory, run_id, hash);
  check_written(out, path);
}

std::string sweep_record_json(const SweepResult& r, const std::string& hash) {
  json j;
  j["alpha"] = r.alpha;
  j["s"] = r.s;
  j["a"] = r.a;
  j["mass_scale"] = r.mass_scale;
  j["outcome"] = to_string(r.outcome);
  j["status"] = to_string(r.status);
  j["strichartz_acc"] = number_or_null(r.strichartz_acc);
  j["strichartz_norm"] = number_or_null(r.strichartz_norm);
  j["peak_h_alpha"] = number_or_null(r.peak_h_alpha);
  j["initial_mass_sq"] = number_or_null(r.initial_mass_sq);
  j["final_mass_sq"] = number_or_null(r.final_mass_sq);
  j["wall_time_s"] = r.wall_time_s;
  j["config_hash"] = hash;
  return j.dump();
}

SweepResult parse_sweep_record(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed sweep record: ") + e.what());
  }
  SweepResult r;
  r.alpha = number_from(j, "alpha");
  r.s = number_from(j, "s");
  r.a = number_from(j, "a");
  r.mass_scale = number_from(j, "mass_scale");
  r.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  r.status = status_from_string(j.at("status").get<std::string>());
  r.strichartz_acc = number_from(j, "strichartz_acc");
  r.strichartz_norm = number_from(j, "strichartz_norm");
  r.peak_h_alpha = number_from(j, "peak_h_alpha");
  r.initial_mass_sq = number_from(j, "initial_mass_sq");
  r.final_mass_sq = number_from(j, "final_mass_sq");
  r.wall_time_s = number_from(j, "wall_time_s");
  return r;
}

std::vector<SweepResult> read_sweep_jsonl(const std::string& path) {
  std::vector<SweepResult> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_sweep_record(line));
  }
  return out;
}

PlotTable timeseries_table(const Trajectory& trajectory) {
  PlotTable t;
  for (const auto& r : trajectory.records) {
    t["t"].push_back(r.t);
    t["mass_sq"].push_back(r.mass_sq);
    t["energy"].push_back(r.energy);
    t["h_alpha_sq"].push_back(r.h_alpha_sq);
    t["h_s_sq"].push_back(r.h_s_sq);
    t["h_salpha_sq"].push_back(r.h_salpha_sq);
    t["lp_theta"].push_back(r.lp_theta);
    t["strichartz_acc"].push_back(r.strichartz_acc);
    t["mass_resid"].push_back(r.mass_resid);
    t["energy_resid"].push_back(r.energy_resid);
  }
  return t;
}

PlotTable sweep_table(const std::vector<SweepResult>& results) {
  PlotTable t;
  for (const auto& r : results) {
    t["a"].push_back(r.a);
    t["alpha"].push_back(r.alpha);
    t["s"].push_back(r.s);
    t["mass_scale"].push_back(r.mass_scale);
    t["strichartz_acc"].push_back(r.strichartz_acc);
    t["strichartz_norm"].push_back(r.strichartz_norm);
    t["peak_h_alpha"].push_back(r.peak_h_alpha);
    t["initial_mass_sq"].push_back(r.initial_mass_sq);
    t["final_mass_sq"].push_back(r.final_mass_sq);
  }
  return t;
}

void emit_plotdata(const PlotTable& table, const std::string& x, const std::vector<std::string>& ys,
                   std::ostream& out) {
  check_series(table, x, ys);
  out << "# " << x;
  for (const auto& y : ys) out << ' ' << y;
  out << '\n';
  const auto& xs = table.at(x);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << format_double(xs[i]);
    for (const auto& y : ys) out << ' ' << format_double(table.at(y)[i]);
    out << '\n';
  }
}

void emit_plotdata(const PlotTable& table, const std::string& x, const std::vector<std::string>& ys,
                   const std::string& path) {
  check_series(table, x, ys);
  auto out = open_for_write(path);
  emit_plotdata(table, x, ys, static_cast<std::ostream&>(out));
  check_written(out, path);
}

void write_svg(const PlotTable& table, const std::string& x, const std::vector<std::string>& ys,
               const std::string& path, const std::string& title) {
  check_series(table, x, ys);
  constexpr double W = 640, H = 400, left = 70, right = 20, top = 40, bottom = 50;
  const auto& xs = table.at(x);

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) continue;
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    for (const auto& y : ys) {
      const double v = table.at(y)[i];
      if (!std::isfinite(v)) continue;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!std::isfinite(xmin) || !std::isfinite(ymin)) throw std::invalid_argument("no finite points to plot");
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * (W - left - right); };
  auto py = [&](double v) { return H - bottom - (v - ymin) / (ymax - ymin) * (H - top - bottom); };

  static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream svg;
  svg << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">)",
                     W, H)
      << '\n';
  svg << fmt::format(R"(<rect width="{}" height="{}" fill="white"/>)", W, H) << '\n';
  if (!title.empty()) {
    svg << fmt::format(R"(<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>)", W / 2,
                       escape_xml(title))
        << '\n';
  }
  svg << fmt::format(R"(<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>)", left, H - bottom, W - right)
      << '\n';
  svg << fmt::format(R"(<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>)", left, top, H - bottom) << '\n';
  svg << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle">{}</text>)", (left + W - right) / 2, H - 12,
                     escape_xml(x))
      << '\n';
  std::string ylabel;
  for (const auto& y : ys) ylabel += (ylabel.empty() ? "" : ", ") + y;
  svg << fmt::format(R"svg(<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>)svg",
                     (top + H - bottom) / 2, escape_xml(ylabel))
      << '\n';
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4, fy = ymin + (ymax - ymin) * k / 4;
    svg << fmt::format(R"(<text x="{:.1f}" y="{}" text-anchor="middle">{:.4g}</text>)", px(fx), H - bottom + 16, fx)
        << '\n';
    svg << fmt::format(R"(<text x="{}" y="{:.1f}" text-anchor="end">{:.4g}</text>)", left - 6, py(fy) + 4, fy)
        << '\n';
  }
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const auto& v = table.at(ys[k]);
    std::string points;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (std::isfinite(xs[i]) && std::isfinite(v[i])) points += fmt::format("{:.2f},{:.2f} ", px(xs[i]), py(v[i]));
    }
    svg << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)",
                       colors[k % std::size(colors)], points)
        << '\n';
  }
  svg << "</svg>\n";

  auto out = open_for_write(path);
  out << svg.str();
  check_written(out, path);
}

}  // namespace fnls
