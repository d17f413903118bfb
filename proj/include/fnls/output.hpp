#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fnls/analysis.hpp"
#include "fnls/integrator.hpp"

namespace fnls {

/// Column order of the time-series CSV. Changing it is a format break.
inline constexpr const char* kTimeseriesHeader =
    "t,mass_sq,energy,h_alpha_sq,h_s_sq,h_salpha_sq,lp_theta,strichartz_acc,mass_resid,energy_resid,"
    "run_id,config_hash";

/// Shortest text with 17 significant digits, "nan"/"inf" for non-finite.
std::string format_double(double v);

void write_timeseries(std::ostream& out, const Trajectory& trajectory, const std::string& run_id,
                      const std::string& hash);
/// Throws IoError naming the path when the file cannot be written.
void write_timeseries(const std::string& path, const Trajectory& trajectory, const std::string& run_id,
                      const std::string& hash);

/// One JSON object (no trailing newline) per sweep point.
std::string sweep_record_json(const SweepResult& result, const std::string& hash);
SweepResult parse_sweep_record(const std::string& line);
/// Reads every record of a JSONL file; a missing file yields an empty list.
std::vector<SweepResult> read_sweep_jsonl(const std::string& path);

/// Named numeric columns for plot output.
using PlotTable = std::map<std::string, std::vector<double>>;

PlotTable timeseries_table(const Trajectory& trajectory);
PlotTable sweep_table(const std::vector<SweepResult>& results);

/// Plain whitespace-separated columns: x then each y. Throws
/// std::invalid_argument for unknown columns or empty series.
void emit_plotdata(const PlotTable& table, const std::string& x, const std::vector<std::string>& ys,
                   const std::string& path);
void emit_plotdata(const PlotTable& table, const std::string& x, const std::vector<std::string>& ys,
                   std::ostream& out);

/// Minimal SVG line chart with labelled axes.
void write_svg(const PlotTable& table, const std::string& x, const std::vector<std::string>& ys,
               const std::string& path, const std::string& title = {});

}  // namespace fnls
