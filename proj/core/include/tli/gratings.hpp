#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tli/fourier_series.hpp"

namespace tli {

/// Which nodes of the one-colour lattice a two-colour beam leaves open.
/// `plus` blocks the even nodes (opening at x = -1/4), `minus` the odd ones
/// (opening at x = +1/4).
enum class NodeParity { plus, minus };

/// One standing-wave depletion laser.
///
/// The beam acts on the wave function as exp[(-n0/2 + i phi0) cos^2(arg)],
/// with arg = 2 pi (x - shift) for period_multiplier 1 and
/// arg = pi (x - shift) -+ pi/4 for period_multiplier 2.
struct LaserBeam {
  double n0 = 0.0;    ///< mean absorbed photons at the antinode
  double phi0 = 0.0;  ///< dipole phase at the antinode [rad]
  int period_multiplier = 1;
  double shift = 0.0;  ///< in units of the base laser wavelength

  /// phi0 = beta * n0.
  static LaserBeam with_beta(double n0, double beta, int period_multiplier = 1, double shift = 0.0);

  void validate() const;
};

/// The set of beams acting at one longitudinal plane. An empty beam list is
/// a transparent (absent) grating.
struct GratingSpec {
  std::vector<LaserBeam> beams;
  NodeParity parity = NodeParity::plus;

  static GratingSpec transparent() { return {}; }
  static GratingSpec one_colour(double n0, double beta);

  void validate() const;
};

/// Two-colour grating satisfying the intensity-balance condition
/// n0_a = n0_total - n0_b / 4. Throws std::invalid_argument when that would
/// make the first beam negative.
GratingSpec balanced_two_colour(double n0_total, double n0_b, double beta_a, double beta_b,
                                NodeParity parity);

Complex transmission_amplitude(const GratingSpec& g, double x);

/// n(x) = sum over beams of n0 cos^2(arg); |t(x)|^2 = exp(-n(x)).
double absorbed_photons(const GratingSpec& g, double x);

/// Smallest admissible half width for the analytic amplitude series of g.
int required_half_width(const GratingSpec& g);
int required_intensity_half_width(const GratingSpec& g);

/// Amplitude-type series of t(x) via the modified Bessel expansion.
/// Throws std::invalid_argument if half_width is below required_half_width(g).
FourierSeries fourier_coefficients(const GratingSpec& g, int half_width);
FourierSeries fourier_coefficients(const GratingSpec& g);

/// Intensity-type series of |t(x)|^2 (phases dropped, z -> -n0).
FourierSeries intensity_coefficients(const GratingSpec& g, int half_width);
FourierSeries intensity_coefficients(const GratingSpec& g);

/// Pointwise r(x) = |t_0|^2 - |t_+|^2 - |t_-|^2 for the one-colour grating
/// n0_total and its balanced two-colour partners.
struct TransmissionResidual {
  double max_value;    ///< max over one period
  double min_value;    ///< min over one period
  double cell_average; ///< exact period average from the intensity series
};

TransmissionResidual transmission_residual(double n0_total, double n0_b, double beta_a,
                                           double beta_b, std::size_t samples = 4096);

}  // namespace tli
