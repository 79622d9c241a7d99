#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "tli/fringe.hpp"

namespace tli::oracle {

using Complex = std::complex<double>;

/// Coherent field psi(x) = exp(i bloch_k x) u(x) with u sampled on N uniform
/// points of the unit cell [0, 1). Wavevectors are in units of 1/lambda_L.
struct FieldGrid {
  std::vector<Complex> samples;
  double bloch_k = 0.0;

  static FieldGrid plane_wave(std::size_t points, double bloch_k = 0.0);

  std::size_t size() const { return samples.size(); }
  double spacing() const { return 1.0 / static_cast<double>(samples.size()); }
  double mean_intensity() const;

  /// u(x) -> t(x) u(x), sampled at the grid points.
  void apply(const GratingSpec& g);

  /// Throws std::invalid_argument unless N is a power of two and N >= 512.
  void validate() const;
};

inline constexpr std::size_t kMinGridPoints = 512;
inline constexpr std::size_t kMinKSamples = 64;
inline constexpr std::size_t kSamplesPerCrossPeriod = 8;
inline constexpr std::size_t kGridPointsPerHarmonic = 8;

/// Paraxial free propagation by xi/xi_T: the plane-wave component with
/// wavevector q acquires exp(-i q^2 xi / (16 pi xi_T)).
/// Reuses FFT plans for repeated propagation on one grid size.
class Propagator {
 public:
  explicit Propagator(std::size_t points);
  ~Propagator();
  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;

  std::size_t size() const { return points_; }
  void propagate(FieldGrid& field, double xi_over_xiT);

 private:
  struct Plans;
  std::size_t points_;
  std::unique_ptr<Plans> plans_;
};

FieldGrid propagate(const FieldGrid& field, double xi_over_xiT);

struct OracleSettings {
  std::size_t grid_points = 0;  ///< 0: smallest admissible power of two
  std::size_t k_samples = 0;    ///< 0: smallest admissible count
};

struct OracleResolution {
  std::size_t grid_points;
  std::size_t k_samples;
  int first_harmonics;    ///< retained half width of t_1
  int second_harmonics;   ///< retained half width of t_2
  int longest_cross_index;  ///< largest |j| of a K-dependent cross term exp(-i j K xi / (4 xi_T))
};

/// Resolves and checks the grid and K-sampling for a configuration. Throws
/// std::invalid_argument if an explicit override under-resolves the
/// harmonics or the averaging window.
OracleResolution resolve(const InterferometerConfig& config, const OracleSettings& settings = {});

struct OraclePattern {
  std::vector<double> density;  ///< |psi|^2 averaged over K, at x_k = k/N
  OracleResolution resolution;
};

/// Averages |psi|^2 at the third-grating plane over incident plane waves
/// exp(iKx), K equidistant in [0, 8 pi xi_T / xi). Each sample is a coherent
/// propagation: t_1, free flight, t_2, free flight. The third grating of
/// `config` is ignored.
OraclePattern incoherent_pattern(const InterferometerConfig& config, const OracleSettings& settings = {});

struct Comparison {
  double l2_relative;
  double max_abs;
};

/// Reconstructs the analytic density on the oracle grid and compares.
Comparison compare(const FringeSpectrum& analytic, const std::vector<double>& oracle_density);

}  // namespace tli::oracle
