#include "tli/gratings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tli/special_functions.hpp"

namespace tli {
namespace {

constexpr double kPi = std::numbers::pi;

double beam_argument(const LaserBeam& b, NodeParity parity, double x) {
  if (b.period_multiplier == 1) return 2.0 * kPi * (x - b.shift);
  const double offset = parity == NodeParity::plus ? -kPi / 4.0 : kPi / 4.0;
  return kPi * (x - b.shift) + offset;
}

// exp(z cos^2(arg)) for one beam, as a series on the unit cell.
FourierSeries beam_series(const LaserBeam& b, NodeParity parity, Complex z, SeriesKind kind) {
  const Complex w = 0.5 * z;
  int order = static_cast<int>(std::ceil(std::abs(w) + 40.0 + 8.0 * std::sqrt(std::abs(w))));
  std::vector<Complex> bessel;
  for (;;) {
    bessel = special::exp_scaled_bessel_i_sequence(w, order);
    double peak = 0.0;
    for (const auto& v : bessel) peak = std::max(peak, std::abs(v));
    if (std::abs(bessel.back()) < 1e-3 * kTailTolerance * peak) break;
    order *= 2;
  }
  // one-colour beams have period 1/2 and live on even indices
  const int stride = b.period_multiplier == 1 ? 2 : 1;
  FourierSeries s(kind, stride * order);
  for (int n = -order; n <= order; ++n) {
    const int index = stride * n;
    Complex c = bessel[static_cast<std::size_t>(std::abs(n))];
    double phase = -2.0 * kPi * index * b.shift;
    if (b.period_multiplier == 2) phase += (parity == NodeParity::plus ? -1.0 : 1.0) * kPi * n / 2.0;
    if (phase != 0.0) c *= std::polar(1.0, phase);
    s[index] = c;
  }
  return s.trimmed(kTailTolerance);
}

FourierSeries grating_series(const GratingSpec& g, SeriesKind kind) {
  g.validate();
  FourierSeries acc = FourierSeries::unit(kind);
  for (const auto& b : g.beams) {
    const Complex z = kind == SeriesKind::amplitude ? Complex{-0.5 * b.n0, b.phi0} : Complex{-b.n0, 0.0};
    acc = FourierSeries::product(acc, beam_series(b, g.parity, z, kind), kind);
    acc = acc.trimmed(kTailTolerance);
  }
  return acc;
}

FourierSeries checked(FourierSeries s, int half_width) {
  if (half_width < s.half_width()) {
    throw std::invalid_argument("grating series: half width " + std::to_string(half_width) +
                                " is below the tail-decay threshold " + std::to_string(s.half_width()));
  }
  return s.resized(half_width);
}

}  // namespace

LaserBeam LaserBeam::with_beta(double n0, double beta, int period_multiplier, double shift) {
  return LaserBeam{n0, beta * n0, period_multiplier, shift};
}

void LaserBeam::validate() const {
  if (!(n0 >= 0.0) || !std::isfinite(n0)) throw std::invalid_argument("LaserBeam: n0 must be finite and >= 0");
  if (!std::isfinite(phi0)) throw std::invalid_argument("LaserBeam: phi0 must be finite");
  if (period_multiplier != 1 && period_multiplier != 2) {
    throw std::invalid_argument("LaserBeam: period_multiplier must be 1 or 2");
  }
  if (!std::isfinite(shift)) throw std::invalid_argument("LaserBeam: shift must be finite");
}

GratingSpec GratingSpec::one_colour(double n0, double beta) {
  return GratingSpec{{LaserBeam::with_beta(n0, beta)}, NodeParity::plus};
}

void GratingSpec::validate() const {
  for (const auto& b : beams) b.validate();
}

GratingSpec balanced_two_colour(double n0_total, double n0_b, double beta_a, double beta_b,
                                NodeParity parity) {
  if (!(n0_b >= 0.0)) throw std::invalid_argument("balanced_two_colour: n0_b must be >= 0");
  const double n0_a = n0_total - 0.25 * n0_b;
  if (!(n0_a >= 0.0)) {
    throw std::invalid_argument("balanced_two_colour: n0_total < n0_b/4 gives a negative first beam");
  }
  return GratingSpec{{LaserBeam::with_beta(n0_a, beta_a, 1), LaserBeam::with_beta(n0_b, beta_b, 2)}, parity};
}

Complex transmission_amplitude(const GratingSpec& g, double x) {
  Complex exponent{};
  for (const auto& b : g.beams) {
    const double c = std::cos(beam_argument(b, g.parity, x));
    exponent += Complex{-0.5 * b.n0, b.phi0} * (c * c);
  }
  return std::exp(exponent);
}

double absorbed_photons(const GratingSpec& g, double x) {
  double n = 0.0;
  for (const auto& b : g.beams) {
    const double c = std::cos(beam_argument(b, g.parity, x));
    n += b.n0 * c * c;
  }
  return n;
}

int required_half_width(const GratingSpec& g) {
  return grating_series(g, SeriesKind::amplitude).half_width();
}

int required_intensity_half_width(const GratingSpec& g) {
  return grating_series(g, SeriesKind::intensity).half_width();
}

FourierSeries fourier_coefficients(const GratingSpec& g) { return grating_series(g, SeriesKind::amplitude); }

FourierSeries fourier_coefficients(const GratingSpec& g, int half_width) {
  return checked(fourier_coefficients(g), half_width);
}

FourierSeries intensity_coefficients(const GratingSpec& g) { return grating_series(g, SeriesKind::intensity); }

FourierSeries intensity_coefficients(const GratingSpec& g, int half_width) {
  return checked(intensity_coefficients(g), half_width);
}

TransmissionResidual transmission_residual(double n0_total, double n0_b, double beta_a, double beta_b,
                                           std::size_t samples) {
  const GratingSpec zero = GratingSpec::one_colour(n0_total, beta_a);
  const GratingSpec plus = balanced_two_colour(n0_total, n0_b, beta_a, beta_b, NodeParity::plus);
  const GratingSpec minus = balanced_two_colour(n0_total, n0_b, beta_a, beta_b, NodeParity::minus);

  TransmissionResidual r{-INFINITY, INFINITY, 0.0};
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(samples) - 0.5;
    const double v = std::exp(-absorbed_photons(zero, x)) - std::exp(-absorbed_photons(plus, x)) -
                     std::exp(-absorbed_photons(minus, x));
    r.max_value = std::max(r.max_value, v);
    r.min_value = std::min(r.min_value, v);
  }
  r.cell_average = (intensity_coefficients(zero).at(0) - intensity_coefficients(plus).at(0) -
                    intensity_coefficients(minus).at(0))
                       .real();
  return r;
}

}  // namespace tli
