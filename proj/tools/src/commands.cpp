#include "tli_app/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "tli/fringe.hpp"
#include "tli/oracle.hpp"
#include "tli/parallel.hpp"
#include "tli/witness.hpp"

#ifndef TLI_VERSION
#define TLI_VERSION "unknown"
#endif

namespace tli::app {

const std::vector<std::string> kScanColumns{"xi_over_xiT", "IY0", "IN0", "IYp", "INp", "IYm", "INm",
                                            "Q",           "Qm",  "W",   "delta_Y", "delta_N", "W_delta"};

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string n0_tag(double n0) { return "n0-" + short_number(n0); }

GratingSpec only_multiplier(const GratingSpec& g, int multiplier) {
  GratingSpec out;
  out.parity = g.parity;
  for (const auto& b : g.beams) {
    if (b.period_multiplier == multiplier) out.beams.push_back(b);
  }
  return out;
}

const char* setting_name(SecondSetting s) {
  switch (s) {
    case SecondSetting::zero: return "G0";
    case SecondSetting::plus: return "G+";
    case SecondSetting::minus: return "G-";
  }
  return "?";
}

}  // namespace

Table gratings_table(const RunConfig& config, double n0_second) {
  const WitnessSetup setup = config.setup_for(n0_second);
  setup.validate();
  const GratingSpec g0 = setup.second_grating(SecondSetting::zero);
  const GratingSpec gp = setup.second_grating(SecondSetting::plus);
  const GratingSpec half = only_multiplier(gp, 1);
  const GratingSpec full = only_multiplier(gp, 2);

  Table t;
  t.header = {"x", "n_G0", "T_G0", "n_Gplus", "T_Gplus", "n_Gplus_half_period", "n_Gplus_full_period"};
  const std::size_t n = config.grating_samples;
  t.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -0.5 + static_cast<double>(i) / static_cast<double>(n);
    const double n_g0 = absorbed_photons(g0, x);
    const double n_gp = absorbed_photons(gp, x);
    t.rows.push_back({x, n_g0, std::exp(-n_g0), n_gp, std::exp(-n_gp), absorbed_photons(half, x),
                      absorbed_photons(full, x)});
  }
  return t;
}

Table scan_table(const RunConfig& config, double n0_second) {
  const auto points = scan_xi(config.setup_for(n0_second), config.separations());
  Table t;
  t.header = kScanColumns;
  t.rows.reserve(points.size());
  for (const auto& p : points) {
    t.rows.push_back({p.xi_over_xiT, p.IY0, p.IN0, p.IYp, p.INp, p.IYm, p.INm, p.Q, p.Qm, p.W, p.delta_Y, p.delta_N,
                      p.W_delta});
  }
  return t;
}

Table wmax_table(const RunConfig& config) {
  const auto& b = config.beta;
  if (b.a != b.first || b.b != b.first || b.third != b.first) {
    throw ConfigError("config error: beta: wmax needs one common beta for all gratings");
  }
  if (!config.second_colour) throw ConfigError("config error: second_colour: wmax needs the second colour on");
  WmaxOptions opt;
  opt.xi_low = config.wmax_xi_low;
  opt.xi_high = config.wmax_xi_high;
  opt.grid_points = config.wmax_grid_points;
  opt.beta = b.first;
  Table t;
  t.header = {"n0_second", "n0_third", "xi_at_max", "W_max", "W_delta"};
  for (const auto& r : wmax_scan(config.wmax_n0, config.wmax_n0_third, opt)) {
    t.rows.push_back({r.n0_second, r.n0_third, r.xi_at_max, r.W_max, r.W_delta});
  }
  return t;
}

Table invasivity_profile_table(const RunConfig& config) {
  const std::size_t n = config.invasivity_points;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = -0.5 + static_cast<double>(i) / static_cast<double>(n);
  Table t;
  t.header.push_back("x");
  std::vector<std::vector<double>> cols;
  for (double n0 : config.invasivity_n0) {
    t.header.push_back("Delta_" + n0_tag(n0));
    cols.push_back(invasivity_profile(n0, xs));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& c : cols) row.push_back(c[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table invasivity_max_table(const RunConfig& config) {
  Table t;
  t.header = {"n0_second", "T_w", "opening_left", "opening_right", "Delta_max_exact", "Delta_max_estimate"};
  for (double n0 : config.invasivity_n0) {
    const auto m = invasivity_max(n0, config.transmission_threshold);
    t.rows.push_back({n0, config.transmission_threshold, m.opening_left, m.opening_right, m.exact, m.estimate});
  }
  return t;
}

bool ValidationReport::pass() const {
  for (const auto& c : cases) {
    if (!c.pass) return false;
  }
  return !cases.empty();
}

ValidationReport run_validation(const RunConfig& config, bool negative_control) {
  oracle::OracleSettings settings{config.oracle_grid_points, config.oracle_k_samples};
  const LadderSign sign = negative_control ? LadderSign::flipped : LadderSign::physical;
  constexpr SecondSetting kSettings[] = {SecondSetting::zero, SecondSetting::plus, SecondSetting::minus};

  struct Job {
    InterferometerConfig geometry;
    double n0;
    SecondSetting setting;
    oracle::OracleResolution resolution;
  };
  std::vector<Job> jobs;
  for (double n0 : config.validate_n0) {
    const WitnessSetup setup = config.setup_for(n0);
    setup.validate();
    for (double xi : config.validate_xi) {
      for (SecondSetting s : kSettings) {
        InterferometerConfig geo{setup.first_grating(), setup.second_grating(s), setup.third_grating(), true, xi};
        try {
          jobs.push_back({geo, n0, s, oracle::resolve(geo, settings)});
        } catch (const std::invalid_argument& e) {
          throw ConfigError("config error: validate: " + std::string(e.what()) + " (n0_second " + short_number(n0) +
                            ", xi/xi_T " + short_number(xi) + ", " + setting_name(s) + ")");
        }
      }
    }
  }

  ValidationReport report{{}, config.oracle_tolerance};
  for (const auto& job : jobs) {
    const auto pattern = oracle::incoherent_pattern(job.geometry, settings);
    const auto cmp = oracle::compare(fringe_spectrum(job.geometry, sign), pattern.density);
    report.cases.push_back({job.n0, job.geometry.xi_over_xiT, setting_name(job.setting),
                            pattern.resolution.grid_points, pattern.resolution.k_samples, cmp.l2_relative,
                            cmp.max_abs, cmp.l2_relative <= config.oracle_tolerance});
  }
  return report;
}

Figure figure_from_table(const Table& table, PlotKind kind, const std::vector<std::string>& columns,
                         const std::string& title) {
  if (table.rows.empty()) throw ConfigError("plot: CSV has no data rows");
  if (table.header.size() < 2) throw ConfigError("plot: CSV needs at least two columns");
  const bool scan_like = table.header == kScanColumns;
  if (kind == PlotKind::scan && !scan_like) throw ConfigError("plot: --kind scan needs a scan CSV");
  if (kind == PlotKind::automatic) kind = scan_like && columns.empty() ? PlotKind::scan : PlotKind::columns;

  auto column = [&](const std::string& name) {
    try {
      return table.column(name);
    } catch (const std::out_of_range&) {
      throw ConfigError("plot: no column named '" + name + "'");
    }
  };

  Figure fig;
  fig.title = title;
  fig.x_label = table.header.front();
  const auto x = column(table.header.front());
  if (kind == PlotKind::scan) {
    fig.x_label = "xi / xi_T";
    fig.panels.push_back({"W", {{"W", x, column("W")}, {"W_delta", x, column("W_delta")}}});
    fig.panels.push_back({"<Q>", {{"<Q>", x, column("Q")}}});
    fig.panels.push_back({"<Q>_m", {{"<Q>_m", x, column("Qm")}}});
    return fig;
  }
  std::vector<std::string> names = columns;
  if (names.empty()) names.assign(table.header.begin() + 1, table.header.end());
  Panel panel;
  for (const auto& n : names) panel.series.push_back({n, x, column(n)});
  panel.y_label = names.size() == 1 ? names.front() : "value";
  fig.panels.push_back(std::move(panel));
  return fig;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Overrides {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<double> n0;
  double n0_third = 0.0;
  double beta = 1.0;
  bool second_colour_off = false;
  double xi_start = 0.0, xi_stop = 0.0;
  std::size_t xi_count = 0;
  std::vector<double> xi;
  std::size_t samples = 0;
  std::vector<double> n0_third_list;
  double window_low = 0.0, window_high = 0.0;
  std::size_t grid_points = 0;
  std::size_t k_samples = 0;
  double tolerance = 0.0;
  double tw = 0.0;
  bool negative_control = false;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("-o,--out-dir", o.out_dir, "output directory");
  sub->add_option("--n0", o.n0, "middle-grating n0 values");
  sub->add_option("--beta", o.beta, "common beta for all gratings");
}

void add_separation(CLI::App* sub, Overrides& o) {
  sub->add_option("--n0-third", o.n0_third, "third-grating n0");
  sub->add_flag("--second-colour-off", o.second_colour_off, "switch the second colour off");
  sub->add_option("--xi-start", o.xi_start, "first xi/xi_T of the grid");
  sub->add_option("--xi-stop", o.xi_stop, "last xi/xi_T of the grid");
  sub->add_option("--xi-count", o.xi_count, "number of grid points");
}

bool given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

RunConfig resolve_config(const CLI::App* sub, const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig::defaults() : load_config(o.config_path);
  const std::string cmd = sub->get_name();
  if (given(sub, "--n0")) {
    if (cmd == "wmax") c.wmax_n0 = o.n0;
    else if (cmd == "invasivity") c.invasivity_n0 = o.n0;
    else if (cmd == "validate") c.validate_n0 = o.n0;
    else c.n0_second = o.n0;
  }
  if (given(sub, "--beta")) c.beta = {o.beta, o.beta, o.beta, o.beta};
  if (given(sub, "--n0-third")) c.n0_third = o.n0_third;
  if (given(sub, "--second-colour-off")) c.second_colour = false;
  if (given(sub, "--xi-start") || given(sub, "--xi-stop") || given(sub, "--xi-count")) {
    if (!(given(sub, "--xi-start") && given(sub, "--xi-stop") && given(sub, "--xi-count"))) {
      throw ConfigError("config error: --xi-start, --xi-stop and --xi-count go together");
    }
    if (o.xi_count == 0) throw ConfigError("config error: --xi-count must be >= 1");
    c.physical.reset();
    c.xi_grid = linspace(o.xi_start, o.xi_stop, o.xi_count);
  }
  if (given(sub, "--samples")) c.grating_samples = o.samples;
  if (given(sub, "--n0-third-list")) c.wmax_n0_third = o.n0_third_list;
  if (given(sub, "--window")) {
    c.wmax_xi_low = o.window_low;
    c.wmax_xi_high = o.window_high;
  }
  if (given(sub, "--grid-points")) {
    if (cmd == "wmax") c.wmax_grid_points = o.grid_points;
    else c.oracle_grid_points = o.grid_points;
  }
  if (given(sub, "--k-samples")) c.oracle_k_samples = o.k_samples;
  if (given(sub, "--tolerance")) c.oracle_tolerance = o.tolerance;
  if (given(sub, "--xi")) c.validate_xi = o.xi;
  if (given(sub, "--tw")) c.transmission_threshold = o.tw;
  c.validate();
  return c;
}

json base_meta(const std::string& command, const RunConfig& c) {
  json meta;
  meta["command"] = command;
  meta["version"] = TLI_VERSION;
  meta["created_utc"] = utc_timestamp();
  meta["threads"] = thread_count();
  meta["config"] = json::parse(to_json(c));
  if (c.physical) {
    meta["de_broglie_wavelength_m"] = c.physical->de_broglie_wavelength_m();
    meta["talbot_length_m"] = c.physical->talbot_length_m();
    meta["xi_over_xiT"] = c.separations();
  }
  meta["outputs"] = json::array();
  return meta;
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw ConfigError("config error: cannot create output directory " + dir);
  return p;
}

void emit(json& meta, const fs::path& dir, const std::string& name, const Table& t) {
  write_csv(dir / name, t);
  meta["outputs"].push_back(name);
  std::cout << (dir / name).string() << "\n";
}

void finish(const json& meta, const fs::path& dir, const std::string& command) {
  write_file_atomic(dir / (command + ".meta.json"), meta.dump(2) + "\n");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Talbot-Lau macrorealism witness simulator", "tli"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TLI_VERSION);
  Overrides o;

  auto* gratings = app.add_subcommand("gratings", "middle-grating profiles n(x), T(x) over one period");
  add_common(gratings, o);
  gratings->add_flag("--second-colour-off", o.second_colour_off, "switch the second colour off");
  gratings->add_option("--samples", o.samples, "points per period (>= 1024)");

  auto* scan = app.add_subcommand("scan", "witness quantities over the separation grid");
  add_common(scan, o);
  add_separation(scan, o);

  auto* wmax = app.add_subcommand("wmax", "maximum of W over a separation window");
  add_common(wmax, o);
  wmax->add_option("--n0-third-list", o.n0_third_list, "third-grating n0 values");
  wmax->add_option("--grid-points", o.grid_points, "coarse grid points in the window");
  auto* window = wmax->add_option("--window", "separation window low high")->expected(2);
  (void)window;

  auto* invasivity = app.add_subcommand("invasivity", "extra absorption of G+ relative to G0");
  add_common(invasivity, o);
  invasivity->add_option("--tw", o.tw, "transmission threshold defining the opening");

  auto* validate = app.add_subcommand("validate", "analytic fringe spectrum against the brute-force oracle");
  add_common(validate, o);
  validate->add_option("--n0-third", o.n0_third, "third-grating n0");
  validate->add_option("--xi", o.xi, "separations xi/xi_T");
  validate->add_option("--grid-points", o.grid_points, "oracle grid size (power of two)");
  validate->add_option("--k-samples", o.k_samples, "Bloch momenta per cross period");
  validate->add_option("--tolerance", o.tolerance, "relative L2 tolerance");
  validate->add_flag("--negative-control", o.negative_control, "flip the ladder sign; must fail");

  std::string plot_csv, plot_out, plot_kind = "auto", plot_title;
  std::vector<std::string> plot_columns;
  auto* plot = app.add_subcommand("plot", "SVG line plot of a CSV written by another subcommand");
  plot->add_option("csv", plot_csv, "input CSV")->required();
  plot->add_option("--kind", plot_kind, "auto, scan or columns")
      ->check(CLI::IsMember({"auto", "scan", "columns"}));
  plot->add_option("--columns", plot_columns, "columns to plot against the first");
  plot->add_option("--out", plot_out, "output SVG (default: CSV path with .svg)");
  plot->add_option("--title", plot_title, "figure title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (plot->parsed()) {
      const Table t = read_csv(plot_csv);
      if (t.rows.size() == 1) std::cerr << "warning: " << plot_csv << " has a single row; the plot is degenerate\n";
      const PlotKind kind = plot_kind == "scan"      ? PlotKind::scan
                            : plot_kind == "columns" ? PlotKind::columns
                                                     : PlotKind::automatic;
      const std::string title = plot_title.empty() ? fs::path(plot_csv).stem().string() : plot_title;
      const Figure fig = figure_from_table(t, kind, plot_columns, title);
      fs::path out = plot_out.empty() ? fs::path(plot_csv).replace_extension(".svg") : fs::path(plot_out);
      write_file_atomic(out, render_svg(fig));
      std::cout << out.string() << "\n";
      return kExitOk;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (sub == wmax && given(wmax, "--window")) {
      const auto w = wmax->get_option("--window")->as<std::vector<double>>();
      o.window_low = w.at(0);
      o.window_high = w.at(1);
    }
    const RunConfig config = resolve_config(sub, o);
    const fs::path dir = prepare_out_dir(o.out_dir);
    const std::string command = sub->get_name();
    json meta = base_meta(command, config);

    if (sub == gratings) {
      for (double n0 : config.n0_second) emit(meta, dir, "gratings_" + n0_tag(n0) + ".csv", gratings_table(config, n0));
    } else if (sub == scan) {
      for (double n0 : config.n0_second) emit(meta, dir, "scan_" + n0_tag(n0) + ".csv", scan_table(config, n0));
    } else if (sub == wmax) {
      emit(meta, dir, "wmax.csv", wmax_table(config));
    } else if (sub == invasivity) {
      emit(meta, dir, "invasivity_profile.csv", invasivity_profile_table(config));
      emit(meta, dir, "invasivity_max.csv", invasivity_max_table(config));
    } else if (sub == validate) {
      const ValidationReport report = run_validation(config, o.negative_control);
      std::printf("%-10s %-8s %-4s %6s %6s %12s %12s  %s\n", "n0_second", "xi/xi_T", "G2", "N", "N_K", "l2_rel",
                  "max_abs", "result");
      json cases = json::array();
      for (const auto& c : report.cases) {
        std::printf("%-10g %-8g %-4s %6zu %6zu %12.3e %12.3e  %s\n", c.n0_second, c.xi_over_xiT, c.setting.c_str(),
                    c.grid_points, c.k_samples, c.l2_relative, c.max_abs, c.pass ? "ok" : "FAIL");
        cases.push_back({{"n0_second", c.n0_second},
                         {"xi_over_xiT", c.xi_over_xiT},
                         {"setting", c.setting},
                         {"grid_points", c.grid_points},
                         {"k_samples", c.k_samples},
                         {"l2_relative", c.l2_relative},
                         {"max_abs", c.max_abs},
                         {"pass", c.pass}});
      }
      meta["negative_control"] = o.negative_control;
      meta["tolerance"] = report.tolerance;
      meta["cases"] = cases;
      meta["pass"] = report.pass();
      finish(meta, dir, command);
      std::printf("validation %s (tolerance %.1e)\n", report.pass() ? "passed" : "FAILED", report.tolerance);
      return report.pass() ? kExitOk : kExitValidation;
    }
    finish(meta, dir, command);
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace tli::app
