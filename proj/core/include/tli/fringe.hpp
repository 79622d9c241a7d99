#pragma once

#include "tli/fourier_series.hpp"
#include "tli/gratings.hpp"

namespace tli {

/// The three settings of the middle grating.
enum class SecondSetting { zero, plus, minus };

/// Sign of the ladder phase. `flipped` is a deliberately wrong propagator
/// used as a negative control for the oracle comparison.
enum class LadderSign { physical, flipped };

/// Three-grating geometry with equal separations xi between successive
/// gratings, measured in Talbot lengths xi_T = lambda_L^2 / (4 lambda_dB).
struct InterferometerConfig {
  GratingSpec first;
  GratingSpec second;
  GratingSpec third;
  bool third_present = true;
  double xi_over_xiT = 1.0;

  void validate() const;
};

/// Density in the plane of the third grating for a spatially incoherent,
/// uniform, monochromatic source, per unit incident flux per unit cell.
struct FringeSpectrum {
  FourierSeries density{SeriesKind::intensity, 0};

  double mean() const { return density.at(0).real(); }
};

/// beta_m(s) = sum_j b_j conj(b_{j-m}) exp(i pi (2j - m) s), s in units of
/// lambda_L. This is the Fourier coefficient at index m of t(X + s/2) conj(t(X - s/2)).
Complex ladder_coefficient(const FourierSeries& second_amplitude, int m, double s,
                           LadderSign sign = LadderSign::physical);

/// S_{-l} = A_l beta_{-2l}(l xi/(4 xi_T)), where A_l are the coefficients of
/// |t_1|^2 and the l-sum stops where |A_l| < 1e-14 max|A|.
/// Throws std::invalid_argument unless xi_over_xiT > 0.
FringeSpectrum fringe_spectrum(const FourierSeries& first_intensity, const FourierSeries& second_amplitude,
                               double xi_over_xiT, LadderSign sign = LadderSign::physical);

FringeSpectrum fringe_spectrum(const InterferometerConfig& config, LadderSign sign = LadderSign::physical);

struct DetectedIntensities {
  double with_third;     ///< I_Y: cell average of S(x) |t_3(x)|^2
  double without_third;  ///< I_N: cell average of S(x)
};

DetectedIntensities detected_intensities(const FringeSpectrum& spectrum, const FourierSeries& third_intensity);

/// Unit-cell average of S(x) |t_3(x)|^2 only (the I_Y term), skipping the
/// construction of the full spectrum. Matches detected_intensities().with_third.
double masked_intensity(const FourierSeries& first_intensity, const FourierSeries& second_amplitude,
                        const FourierSeries& third_intensity, double xi_over_xiT,
                        LadderSign sign = LadderSign::physical);

/// Intensity at the detector for one full configuration; I_Y if the third
/// grating is present, I_N otherwise.
double detected_intensity(const InterferometerConfig& config);

}  // namespace tli
