#pragma once

#include <string>
#include <vector>

#include "tli_app/config.hpp"
#include "tli_app/csv.hpp"
#include "tli_app/svg_plot.hpp"

namespace tli::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitValidation = 2;

extern const std::vector<std::string> kScanColumns;

/// One period x in [-1/2, 1/2) of the middle-grating profiles.
Table gratings_table(const RunConfig& config, double n0_second);

Table scan_table(const RunConfig& config, double n0_second);

Table wmax_table(const RunConfig& config);

Table invasivity_profile_table(const RunConfig& config);
Table invasivity_max_table(const RunConfig& config);

struct ValidationCase {
  double n0_second;
  double xi_over_xiT;
  std::string setting;
  std::size_t grid_points;
  std::size_t k_samples;
  double l2_relative;
  double max_abs;
  bool pass;
};

struct ValidationReport {
  std::vector<ValidationCase> cases;
  double tolerance;

  bool pass() const;
  Table table() const;
};

/// Analytic fringe spectrum against the brute-force oracle on the configured
/// (n0, xi, setting) set. Under-resolved overrides are ConfigErrors and are
/// detected before any propagation runs.
ValidationReport run_validation(const RunConfig& config, bool negative_control);

enum class PlotKind { automatic, scan, columns };

/// kind `scan` (or automatic on a table with the scan columns) gives three
/// stacked panels W, <Q>, <Q>_m; otherwise the selected columns (all but the
/// first by default) are plotted against the first. Throws ConfigError on an
/// empty table or unknown column.
Figure figure_from_table(const Table& table, PlotKind kind, const std::vector<std::string>& columns,
                         const std::string& title);

/// Entry point of the `tli` executable; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace tli::app
