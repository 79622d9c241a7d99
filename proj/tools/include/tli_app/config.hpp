#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tli/witness.hpp"

namespace tli::app {

/// Any problem with the user's configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

/// Physical inputs; the separation grid is converted to xi/xi_T through
/// lambda_dB = h / (m v) and xi_T = lambda_L^2 / (4 lambda_dB).
struct PhysicalSeparation {
  double mass_amu = 0.0;
  double velocity_m_s = 0.0;
  double laser_wavelength_nm = 0.0;
  std::vector<double> separation_m;

  double de_broglie_wavelength_m() const;
  double talbot_length_m() const;
};

struct BetaValues {
  double first = 1.0;
  double a = 1.0;
  double b = 1.0;
  double third = 1.0;
};

struct RunConfig {
  std::vector<double> n0_second{10.0, 50.0};
  double n0_third = 2.0;
  BetaValues beta;
  bool second_colour = true;

  std::vector<double> xi_grid;  ///< dimensionless separations
  std::optional<PhysicalSeparation> physical;

  std::size_t grating_samples = 1024;

  std::vector<double> wmax_n0;
  std::vector<double> wmax_n0_third{1.0, 2.0, 5.0, 10.0};
  double wmax_xi_low = 0.5;
  double wmax_xi_high = 1.5;
  std::size_t wmax_grid_points = 401;

  std::vector<double> invasivity_n0{50.0, 100.0};
  double transmission_threshold = 0.5;
  std::size_t invasivity_points = 1024;

  std::vector<double> validate_n0{2.0, 10.0, 50.0};
  std::vector<double> validate_xi{0.5, 1.0, 1.7, 2.0, 3.0};
  std::size_t oracle_grid_points = 0;
  std::size_t oracle_k_samples = 0;
  double oracle_tolerance = 1e-6;

  /// Defaults reproduce the published figure settings.
  static RunConfig defaults();

  /// Separation grid in xi/xi_T, from whichever specification is present.
  std::vector<double> separations() const;

  WitnessSetup setup_for(double n0_second) const;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Parses a JSON config over the defaults. Unknown keys, wrong types and a
/// missing or unsupported schema_version are ConfigErrors.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Resolved configuration as JSON (for the run-metadata sidecar).
std::string to_json(const RunConfig& config);

}  // namespace tli::app
