#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "tli_app/commands.hpp"

namespace fs = std::filesystem;
using namespace tli::app;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("tli_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "tli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string config_error(const std::string& json) {
  try {
    parse_config(json);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, DefaultsMatchTheReferenceFigure) {
  const RunConfig c = RunConfig::defaults();
  EXPECT_EQ(c.n0_second, (std::vector<double>{10.0, 50.0}));
  EXPECT_EQ(c.n0_third, 2.0);
  EXPECT_EQ(c.beta.first, 1.0);
  EXPECT_EQ(c.beta.a, 1.0);
  EXPECT_EQ(c.beta.b, 1.0);
  EXPECT_EQ(c.beta.third, 1.0);
  EXPECT_TRUE(c.second_colour);
  EXPECT_FALSE(c.physical.has_value());
  ASSERT_EQ(c.xi_grid.size(), 441u);
  EXPECT_DOUBLE_EQ(c.xi_grid.front(), 0.1);
  EXPECT_DOUBLE_EQ(c.xi_grid.back(), 4.5);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, MinimalFileGivesDefaults) {
  const RunConfig c = parse_config(R"({"schema_version": 1})");
  EXPECT_EQ(c.n0_second, RunConfig::defaults().n0_second);
  EXPECT_EQ(c.xi_grid, RunConfig::defaults().xi_grid);
}

TEST(Config, SchemaVersionIsRequired) {
  EXPECT_NE(config_error("{}").find("schema_version"), std::string::npos);
  EXPECT_NE(config_error(R"({"schema_version": 2})").find("unsupported"), std::string::npos);
}

TEST(Config, UnknownKeysNameTheirPath) {
  EXPECT_NE(config_error(R"({"schema_version":1,"nzero":3})").find("nzero: unknown key"), std::string::npos);
  EXPECT_NE(config_error(R"({"schema_version":1,"separation":{"xi_over_xiT":[1],"extra":0}})")
                .find("separation.extra"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"schema_version":1,"beta":{"frist":1}})").find("beta.frist"), std::string::npos);
}

TEST(Config, MalformedJsonReportsPosition) {
  const std::string msg = config_error("{\"schema_version\": 1,\n \"n0_third\": }");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(Config, WrongTypesAreRejected) {
  EXPECT_NE(config_error(R"({"schema_version":1,"n0_third":"two"})").find("n0_third"), std::string::npos);
  EXPECT_NE(config_error(R"({"schema_version":1,"separation":{"xi_over_xiT":{"start":1,"stop":2}}})")
                .find("separation.xi_over_xiT.count"),
            std::string::npos);
}

TEST(Config, ExactlyOneSeparationSpecification) {
  EXPECT_FALSE(config_error(R"({"schema_version":1,"separation":{}})").empty());
  EXPECT_FALSE(config_error(R"({"schema_version":1,"separation":{"xi_over_xiT":[1],
      "physical":{"mass_amu":1,"velocity_m_s":1,"laser_wavelength_nm":1,"separation_m":[1]}}})")
                   .empty());
}

TEST(Config, GridMustBeIncreasingAndPositive) {
  EXPECT_NE(config_error(R"({"schema_version":1,"separation":{"xi_over_xiT":[1,0.5]}})").find("increasing"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"schema_version":1,"separation":{"xi_over_xiT":[0,1]}})").find("> 0"),
            std::string::npos);
}

TEST(Config, PhysicalUnitsConvertThroughTheTalbotLength) {
  const RunConfig c = parse_config(R"({"schema_version":1,"separation":{"physical":{
      "mass_amu":1e6,"velocity_m_s":100,"laser_wavelength_nm":157,"separation_m":[0.5,1.0]}}})");
  ASSERT_TRUE(c.physical.has_value());
  const double lambda_db = 6.62607015e-34 / (1e6 * 1.66053906660e-27 * 100.0);
  EXPECT_NEAR(c.physical->de_broglie_wavelength_m() / lambda_db, 1.0, 1e-15);
  const double xi_t = 157e-9 * 157e-9 / (4.0 * lambda_db);
  const auto xs = c.separations();
  ASSERT_EQ(xs.size(), 2u);
  EXPECT_NEAR(xs[0], 0.5 / xi_t, 1e-14);
  EXPECT_NEAR(xs[1], 1.0 / xi_t, 1e-14);
}

TEST(Config, JsonRoundTrip) {
  RunConfig c = parse_config(R"({"schema_version":1,"n0_second":[3,7.5],"beta":{"a":0.5},
      "second_colour":false,"separation":{"xi_over_xiT":{"start":0.5,"stop":1.5,"count":11}}})");
  const RunConfig back = parse_config(to_json(c));
  EXPECT_EQ(back.n0_second, c.n0_second);
  EXPECT_EQ(back.beta.a, 0.5);
  EXPECT_FALSE(back.second_colour);
  EXPECT_EQ(back.xi_grid, c.xi_grid);
  EXPECT_EQ(back.wmax_n0, c.wmax_n0);
}

TEST(Csv, NumbersRoundTripBitExactly) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  Table t;
  t.header = {"a", "b"};
  for (int i = 0; i < 500; ++i) t.rows.push_back({std::ldexp(mant(rng), expo(rng)), mant(rng)});
  t.rows.push_back({0.1, -0.0});
  const Table back = parse_csv(to_csv(t));
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back.rows[i][j]), std::bit_cast<std::uint64_t>(t.rows[i][j]));
    }
  }
}

TEST(Csv, OutputUsesLfAndHeader) {
  Table t{{"x", "y"}, {{1.0, 2.5}}};
  EXPECT_EQ(to_csv(t), "x,y\n1,2.5\n");
}

TEST(Csv, MalformedInputNamesTheLine) {
  try {
    parse_csv("x,y\n1,2\n3\n");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_csv("x\nabc\n"), std::runtime_error);
  EXPECT_THROW(parse_csv(""), std::runtime_error);
}

TEST(Csv, AtomicWriteLeavesNoTemporary) {
  TempDir dir;
  write_csv(dir.path() / "t.csv", Table{{"x"}, {{1.0}}});
  write_csv(dir.path() / "t.csv", Table{{"x"}, {{2.0}}});
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir.path())) {
    (void)e;
    ++files;
  }
  EXPECT_EQ(files, 1u);
  EXPECT_EQ(slurp(dir.path() / "t.csv"), "x\n2\n");
}

TEST(Gratings, PlusOpeningIsFullyTransparent) {
  const Table t = gratings_table(RunConfig::defaults(), 50.0);
  ASSERT_GE(t.rows.size(), 1024u);
  bool found = false;
  for (const auto& r : t.rows) {
    if (r[0] == -0.25) {
      found = true;
      EXPECT_NEAR(r[t.column_index("T_Gplus")], 1.0, 1e-15);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Gratings, TotalSplitsIntoHalfAndFullPeriodParts) {
  const Table t = gratings_table(RunConfig::defaults(), 50.0);
  const auto total = t.column("n_Gplus");
  const auto half = t.column("n_Gplus_half_period");
  const auto full = t.column("n_Gplus_full_period");
  const std::size_t n = t.rows.size();
  double full_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(total[i], half[i] + full[i], 1e-12);
    EXPECT_NEAR(half[i], half[(i + n / 2) % n], 1e-12);
    full_max = std::max(full_max, full[i]);
  }
  EXPECT_NEAR(full_max, 50.0, 1e-9);
  EXPECT_NEAR(full[n / 4], 0.0, 1e-12);
}

TEST(Gratings, ZeroPowerIsFlat) {
  RunConfig c = RunConfig::defaults();
  c.n0_third = 0.0;
  const Table t = gratings_table(c, 0.0);
  for (const auto& r : t.rows) {
    for (std::size_t j = 1; j < r.size(); ++j) {
      const bool transmission = t.header[j].rfind("T_", 0) == 0;
      EXPECT_EQ(r[j], transmission ? 1.0 : 0.0);
    }
  }
}

TEST(Scan, OnePointGridGivesOneRow) {
  RunConfig c = RunConfig::defaults();
  c.xi_grid = {1.0};
  const Table t = scan_table(c, 50.0);
  EXPECT_EQ(t.header, kScanColumns);
  EXPECT_EQ(t.rows.size(), 1u);
}

TEST(Scan, SecondColourOffKillsTheWitness) {
  RunConfig c = RunConfig::defaults();
  c.second_colour = false;
  for (double w : scan_table(c, 50.0).column("W")) EXPECT_LE(std::abs(w), 1e-12);
}

TEST(Scan, WitnessPeaksNearOddSeparations) {
  const Table t = scan_table(RunConfig::defaults(), 50.0);
  const auto peaks = tli::find_local_maxima(t.column("xi_over_xiT"), t.column("W"));
  auto near = [&](double target) {
    for (const auto& p : peaks) {
      if (std::abs(p.position - target) < 0.05 && p.height > 0.5) return true;
    }
    return false;
  };
  EXPECT_TRUE(near(1.0));
  EXPECT_TRUE(near(3.0));
}

TEST(Invasivity, TablesFollowTheModel) {
  const RunConfig c = RunConfig::defaults();
  const Table profile = invasivity_profile_table(c);
  EXPECT_EQ(profile.header, (std::vector<std::string>{"x", "Delta_n0-50", "Delta_n0-100"}));
  EXPECT_EQ(profile.rows.size(), c.invasivity_points);
  const Table m = invasivity_max_table(c);
  ASSERT_EQ(m.rows.size(), 2u);
  const double ratio = m.rows[0][m.column_index("Delta_max_exact")] / m.rows[1][m.column_index("Delta_max_exact")];
  EXPECT_NEAR(ratio, 2.0, 0.2);
}

TEST(Wmax, PerGratingBetaIsRejected) {
  RunConfig c = RunConfig::defaults();
  c.beta.a = 0.5;
  EXPECT_THROW(wmax_table(c), ConfigError);
}

TEST(Plot, ScanTableGivesThreePanels) {
  RunConfig c = RunConfig::defaults();
  c.xi_grid = tli::linspace(0.5, 1.5, 11);
  const Figure fig = figure_from_table(scan_table(c, 10.0), PlotKind::automatic, {}, "scan");
  ASSERT_EQ(fig.panels.size(), 3u);
  EXPECT_EQ(fig.panels[0].y_label, "W");
  EXPECT_EQ(fig.panels[1].y_label, "<Q>");
  EXPECT_EQ(fig.panels[2].y_label, "<Q>_m");
  const std::string svg = render_svg(fig);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("&lt;Q&gt;_m"), std::string::npos);
}

TEST(Plot, EmptyTableIsAnError) {
  EXPECT_THROW(figure_from_table(Table{{"x", "y"}, {}}, PlotKind::automatic, {}, ""), ConfigError);
}

TEST(Plot, UnknownColumnIsAnError) {
  EXPECT_THROW(figure_from_table(Table{{"x", "y"}, {{1, 2}}}, PlotKind::columns, {"z"}, ""), ConfigError);
}

TEST(Plot, SingleRowDrawsAMarker) {
  const std::string svg = render_svg(figure_from_table(Table{{"x", "y"}, {{1, 2}}}, PlotKind::automatic, {}, ""));
  EXPECT_NE(svg.find("<circle"), std::string::npos);
}

TEST(Cli, ScanWritesCsvAndSidecar) {
  TempDir dir;
  ASSERT_EQ(run({"scan", "-o", dir.path().string(), "--n0", "50", "--xi-start", "0.5", "--xi-stop", "1.5",
                 "--xi-count", "21"}),
            kExitOk);
  const Table t = read_csv(dir.path() / "scan_n0-50.csv");
  EXPECT_EQ(t.header, kScanColumns);
  EXPECT_EQ(t.rows.size(), 21u);
  EXPECT_TRUE(fs::exists(dir.path() / "scan.meta.json"));
  EXPECT_FALSE(fs::exists(dir.path() / "scan_n0-10.csv"));
}

TEST(Cli, ScanCsvRoundTripsThroughPlotWithoutLoss) {
  TempDir dir;
  RunConfig c = RunConfig::defaults();
  c.xi_grid = tli::linspace(0.3, 2.7, 17);
  const Table computed = scan_table(c, 50.0);
  write_csv(dir.path() / "s.csv", computed);
  ASSERT_EQ(run({"plot", (dir.path() / "s.csv").string()}), kExitOk);
  EXPECT_TRUE(fs::exists(dir.path() / "s.svg"));
  const Table back = read_csv(dir.path() / "s.csv");
  ASSERT_EQ(back.rows.size(), computed.rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) EXPECT_EQ(back.rows[i], computed.rows[i]);
}

TEST(Cli, FlagsOverrideFileValues) {
  TempDir dir;
  write(dir.path() / "c.json", R"({"schema_version":1,"n0_second":[10],"separation":{"xi_over_xiT":[1.0]}})");
  ASSERT_EQ(run({"scan", "-c", (dir.path() / "c.json").string(), "-o", dir.path().string(), "--n0", "20"}),
            kExitOk);
  EXPECT_TRUE(fs::exists(dir.path() / "scan_n0-20.csv"));
  EXPECT_FALSE(fs::exists(dir.path() / "scan_n0-10.csv"));
}

TEST(Cli, ConfigErrorsExitWithOne) {
  TempDir dir;
  write(dir.path() / "bad.json", R"({"schema_version":1,"unknown":true})");
  EXPECT_EQ(run({"scan", "-c", (dir.path() / "bad.json").string(), "-o", dir.path().string()}), kExitConfig);
  EXPECT_EQ(run({"scan", "--no-such-flag"}), kExitConfig);
  EXPECT_EQ(run({}), kExitConfig);
  EXPECT_EQ(run({"scan", "-o", dir.path().string(), "--xi-start", "1"}), kExitConfig);
}

TEST(Cli, PlotOfEmptyCsvExitsWithOne) {
  TempDir dir;
  write(dir.path() / "e.csv", "x,y\n");
  EXPECT_EQ(run({"plot", (dir.path() / "e.csv").string()}), kExitConfig);
  write(dir.path() / "one.csv", "x,y\n1,2\n");
  EXPECT_EQ(run({"plot", (dir.path() / "one.csv").string()}), kExitOk);
}

TEST(Cli, ValidatePassesOnAnAdmissibleCase) {
  TempDir dir;
  EXPECT_EQ(run({"validate", "-o", dir.path().string(), "--n0", "10", "--xi", "1.7"}), kExitOk);
  EXPECT_TRUE(fs::exists(dir.path() / "validate.meta.json"));
}

TEST(Cli, NegativeControlFailsValidation) {
  TempDir dir;
  EXPECT_EQ(run({"validate", "-o", dir.path().string(), "--n0", "10", "--xi", "1.7", "--negative-control"}),
            kExitValidation);
}

TEST(Cli, TinyOracleGridIsAnExplicitError) {
  TempDir dir;
  EXPECT_EQ(run({"validate", "-o", dir.path().string(), "--n0", "10", "--xi", "1.7", "--grid-points", "64"}),
            kExitConfig);
}

TEST(Cli, RepeatedScansAreByteIdentical) {
  TempDir a, b;
  const std::vector<std::string> args{"--n0", "10", "--xi-start", "0.2", "--xi-stop", "3.2", "--xi-count", "31"};
  auto with_dir = [&](const TempDir& d) {
    auto v = args;
    v.insert(v.begin(), {"scan", "-o", d.path().string()});
    return v;
  };
  ASSERT_EQ(run(with_dir(a)), kExitOk);
  ASSERT_EQ(run(with_dir(b)), kExitOk);
  EXPECT_EQ(slurp(a.path() / "scan_n0-10.csv"), slurp(b.path() / "scan_n0-10.csv"));
}

TEST(Config, ShippedExamplesParse) {
  std::size_t seen = 0;
  for (const auto& e : fs::directory_iterator(TLI_CONFIG_DIR)) {
    if (e.path().extension() != ".json") continue;
    EXPECT_NO_THROW(load_config(e.path())) << e.path();
    ++seen;
  }
  EXPECT_GE(seen, 1u);
}
