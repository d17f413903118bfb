#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fnls/cli.hpp"
#include "fnls/error.hpp"
#include "fnls/output.hpp"

using namespace fnls;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fnls_test_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int cli(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  args.insert(args.begin(), "fnls");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return rc;
}

}  // namespace

TEST(FormatDouble, RoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, 2.0, -1e-300, 6.02214076e23, 5e-324}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Timeseries, EmptyTrajectoryGivesHeaderOnly) {
  std::ostringstream out;
  write_timeseries(out, Trajectory{}, "r", "h");
  EXPECT_EQ(out.str(), std::string(kTimeseriesHeader) + "\n");
}

TEST(Timeseries, RowsCarryRunIdAndHash) {
  Trajectory tr;
  tr.records.resize(2);
  tr.records[1].t = 0.5;
  std::ostringstream out;
  write_timeseries(out, tr, "run7", "abc");
  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(row.substr(row.size() - 9), ",run7,abc");
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 11);
}

TEST(Timeseries, UnwritablePathNamed) {
  try {
    write_timeseries("/nonexistent-dir/x.csv", Trajectory{}, "r", "h");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
  }
}

TEST(SweepJsonl, RoundTrip) {
  SweepResult r;
  r.alpha = 0.8, r.s = 0.8, r.a = 1.0 / 3.0, r.mass_scale = 1.5;
  r.outcome = SweepOutcome::grew;
  r.status = RunStatus::completed;
  r.strichartz_acc = 0.123456789012345678;
  r.strichartz_norm = std::numeric_limits<double>::quiet_NaN();
  r.final_mass_sq = 1e-200;
  const auto back = parse_sweep_record(sweep_record_json(r, "deadbeef"));
  EXPECT_EQ(back.a, r.a);
  EXPECT_EQ(back.strichartz_acc, r.strichartz_acc);
  EXPECT_EQ(back.final_mass_sq, r.final_mass_sq);
  EXPECT_TRUE(std::isnan(back.strichartz_norm));
  EXPECT_EQ(back.outcome, SweepOutcome::grew);
  EXPECT_THROW(parse_sweep_record("{not json"), std::invalid_argument);
  EXPECT_TRUE(read_sweep_jsonl("/nonexistent-dir/none.jsonl").empty());
}

TEST(PlotData, ColumnsAndErrors) {
  PlotTable t{{"t", {0.0, 1.0}}, {"mass_sq", {2.0, 1.5}}, {"empty", {}}};
  std::ostringstream out;
  emit_plotdata(t, "t", {"mass_sq"}, out);
  EXPECT_EQ(out.str(), "# t mass_sq\n0 2\n1 1.5\n");
  std::ostringstream sink;
  EXPECT_THROW(emit_plotdata(t, "t", {"energy"}, sink), std::invalid_argument);
  EXPECT_THROW(emit_plotdata(t, "t", {"empty"}, sink), std::invalid_argument);
  EXPECT_THROW(emit_plotdata(t, "t", {}, sink), std::invalid_argument);
}

TEST(PlotData, SvgHasAxesLabels) {
  TempDir dir;
  PlotTable t{{"a", {0.5, 1.0, 2.0}}, {"strichartz_acc", {3.0, 2.0, 1.0}}};
  const auto path = dir.path / "s.svg";
  write_svg(t, "a", {"strichartz_acc"}, path.string(), "sweep");
  const auto svg = slurp(path);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find(">a</text>"), std::string::npos);
  EXPECT_NE(svg.find("strichartz_acc</text>"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  std::string err;
  EXPECT_EQ(cli({"frobnicate"}, nullptr, &err), kExitUsage);
  EXPECT_NE(err.find("Usage"), std::string::npos);
  EXPECT_EQ(cli({}, nullptr, &err), kExitUsage);
}

TEST(Cli, AdmissibleBoundary) {
  std::string out;
  EXPECT_EQ(cli({"admissible", "--d", "2", "--q", "inf", "--r", "2"}, &out), kExitOk);
  EXPECT_EQ(out.substr(0, out.find('\n')), "admissible (boundary)");
  EXPECT_EQ(cli({"admissible", "--d", "2", "--q", "2", "--r", "2"}, &out), kExitCheckFailed);
  EXPECT_EQ(out.substr(0, out.find('\n')), "not admissible");
  EXPECT_EQ(cli({"admissible", "--d", "2", "--q", "x", "--r", "2"}), kExitUsage);
}

TEST(Cli, BadConfigIsUsageError) {
  TempDir dir;
  const auto path = dir.path / "bad.yaml";
  std::ofstream(path) << "model: {d: 2, alpha: 0.8}\ngrid: {}\nprofile: {}\nbogus: 1\n";
  std::string err;
  EXPECT_EQ(cli({"simulate", "--config", path.string()}, nullptr, &err), kExitUsage);
  EXPECT_NE(err.find("bogus"), std::string::npos);
  EXPECT_EQ(cli({"simulate", "--config", (dir.path / "missing.yaml").string()}), kExitUsage);
}

TEST(Cli, SimulateIsDeterministicAndMatchesGolden) {
  TempDir dir;
  const auto a = dir.path / "a.csv", b = dir.path / "b.csv";
  ASSERT_EQ(cli({"simulate", "--out", a.string()}), kExitOk);
  ASSERT_EQ(cli({"simulate", "--out", b.string()}), kExitOk);
  const auto text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  EXPECT_EQ(text, slurp(fs::path(FNLS_TEST_DATA_DIR) / "default_timeseries.csv"));
}

TEST(Cli, SweepResumesFromJsonl) {
  TempDir dir;
  const auto path = (dir.path / "sweep.jsonl").string();
  std::string out;
  ASSERT_EQ(cli({"sweep", "--out", path, "--a", "1,2", "--t-end", "0.2"}, &out), kExitOk);
  std::string err;
  ASSERT_EQ(cli({"sweep", "--out", path, "--a", "1,2,4", "--t-end", "0.2"}, &out, &err), kExitOk);
  EXPECT_NE(err.find("resuming: 2"), std::string::npos);
  const auto records = read_sweep_jsonl(path);
  EXPECT_EQ(records.size(), 3u);
  EXPECT_NE(out.find("accumulator decreasing in a: yes"), std::string::npos);
}

TEST(Cli, VerifyDefaultPasses) {
  std::string out;
  EXPECT_EQ(cli({"verify"}, &out), kExitOk);
  EXPECT_NE(out.find("mass residual slope"), std::string::npos);
  EXPECT_EQ(out.find("FAIL"), std::string::npos);
}
