#pragma once

#include <array>
#include <span>
#include <vector>

#include "tli/fourier_series.hpp"
#include "tli/fringe.hpp"
#include "tli/gratings.hpp"

namespace tli {

/// Laser parameters of the three-grating interferometer. The middle grating
/// is the one-colour G0 (n0_second) or its balanced two-colour partners with
/// second-colour depth n0_second_b.
struct WitnessSetup {
  double n0_first = 50.0;
  double n0_second = 50.0;
  double n0_second_b = 50.0;
  double n0_third = 2.0;
  double beta_first = 1.0;
  double beta_a = 1.0;
  double beta_b = 1.0;
  double beta_third = 1.0;

  /// n0_first = n0_second_b = n0_second, all beta equal.
  static WitnessSetup symmetric(double n0_second, double n0_third, double beta = 1.0);

  GratingSpec first_grating() const;
  GratingSpec second_grating(SecondSetting s) const;
  GratingSpec third_grating() const;

  void validate() const;
};

struct WitnessPoint {
  double xi_over_xiT = 0.0;
  double IY0 = 0.0, IN0 = 0.0;
  double IYp = 0.0, INp = 0.0;
  double IYm = 0.0, INm = 0.0;
  double Q = 0.0;
  double Qm = 0.0;
  double W = 0.0;
  double delta_Y = 0.0;
  double delta_N = 0.0;
  double W_delta = 0.0;

  /// The macrorealist premise 0 <= delta_Y <= delta_N, evaluated on the model.
  bool deficit_chain_holds() const { return 0.0 <= delta_Y && delta_Y <= delta_N; }
};

/// Denominators smaller than this (in units of the incident flux) are errors.
inline constexpr double kMinFlux = 1e-12;

/// <Q> = 2 I_Y0 / I_N0 - 1. Throws std::domain_error when I_N0 < kMinFlux,
/// std::invalid_argument when I_Y0 lies outside [0, I_N0].
double expectation_q(double IY0, double IN0);

/// <Q>_m = 2 (I_Y+ + I_Y-) / (I_N+ + I_N-) - 1.
double expectation_qm(double IYp, double IYm, double INp, double INm);

double witness(double Q, double Qm);

/// W_delta = 2 |delta_N| / (I_N0 - delta_N).
double revised_bound(double delta_N, double IN0);

/// Precomputed grating spectra for one WitnessSetup; evaluation at a
/// separation is cheap and thread-safe.
class WitnessModel {
 public:
  explicit WitnessModel(const WitnessSetup& setup);

  const WitnessSetup& setup() const { return setup_; }
  const FourierSeries& first_intensity() const { return first_intensity_; }
  const FourierSeries& third_intensity() const { return third_intensity_; }
  const FourierSeries& second_amplitude(SecondSetting s) const;

  WitnessPoint evaluate(double xi_over_xiT) const;

 private:
  WitnessSetup setup_;
  FourierSeries first_intensity_;
  FourierSeries third_intensity_;
  std::array<FourierSeries, 3> second_;
};

/// Rejects empty, non-positive or not strictly increasing grids.
void validate_xi_grid(std::span<const double> xi_grid);

std::vector<WitnessPoint> scan_xi(const WitnessSetup& setup, std::span<const double> xi_grid);

std::vector<double> linspace(double start, double stop, std::size_t count);

struct WmaxRow {
  double n0_second;
  double n0_third;
  double xi_at_max;
  double W_max;
  double W_delta;
};

struct WmaxOptions {
  double xi_low = 0.5;
  double xi_high = 1.5;
  std::size_t grid_points = 401;
  double beta = 1.0;
};

/// Maximum of W over the separation window for every (n0_second, n0_third)
/// pair, with W_delta at the same parameters. Rows are ordered n0_third-major
/// in the order given.
std::vector<WmaxRow> wmax_scan(std::span<const double> n0_grid, std::span<const double> n0_third_values,
                               const WmaxOptions& options = {});

struct Peak {
  std::size_t index;  ///< grid index of the sampled maximum
  double position;    ///< vertex of the interpolating parabola
  double height;
};

/// Interior samples with y[i-1] < y[i] >= y[i+1], refined by a three-point
/// quadratic fit.
std::vector<Peak> find_local_maxima(std::span<const double> x, std::span<const double> y);

/// Full width at half of y[peak_index], linear interpolation between samples.
/// Returns +inf if the curve does not fall below half height on both sides.
double full_width_half_max(std::span<const double> x, std::span<const double> y, std::size_t peak_index);

/// Delta(x) = n0 [cos^2(pi x - pi/4) - cos^2(2 pi x)/4], the extra photon
/// number absorbed in G+ relative to G0 under balanced settings.
std::vector<double> invasivity_profile(double n0_total, std::span<const double> x_grid);

struct InvasivityMax {
  double opening_left;   ///< edges of the opening around x = -1/4
  double opening_right;
  double exact;          ///< max of Delta over the opening
  double estimate;       ///< (ln T_w)^2 / (16 n0)
};

/// The opening is the contiguous region around x = -1/4 where
/// |t_+(x)|^2 >= T_w. Throws std::invalid_argument for T_w outside (0, 1) or
/// n0 <= 0, std::domain_error if the opening spans the whole period.
InvasivityMax invasivity_max(double n0_total, double transmission_threshold);

}  // namespace tli
