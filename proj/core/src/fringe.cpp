#include "tli/fringe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tli {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kReanchor = 64;

double sign_of(LadderSign s) { return s == LadderSign::physical ? 1.0 : -1.0; }

// sum_j b_j conj(b_{j+2l}) exp(i (pi/2) sgn l r (j + l))
Complex ladder_term(const FourierSeries& b, int l, double r, double sgn) {
  const int w = b.half_width();
  const int lo = std::max(-w, -w - 2 * l);
  const int hi = std::min(w, w - 2 * l);
  if (lo > hi) return {};
  const double unit = 0.5 * kPi * sgn * r * static_cast<double>(l);
  const Complex step = std::polar(1.0, unit);
  Complex sum{};
  Complex phase{};
  for (int j = lo; j <= hi; ++j) {
    if ((j - lo) % kReanchor == 0) phase = std::polar(1.0, unit * static_cast<double>(j + l));
    sum += b.at(j) * std::conj(b.at(j + 2 * l)) * phase;
    phase *= step;
  }
  return sum;
}

double l_cut(const FourierSeries& a) { return kTailTolerance * a.max_abs(); }

void require_positive_separation(double xi_over_xiT) {
  if (!(xi_over_xiT > 0.0) || !std::isfinite(xi_over_xiT)) {
    throw std::invalid_argument("fringe: xi/xi_T must be finite and > 0");
  }
}

}  // namespace

void InterferometerConfig::validate() const {
  first.validate();
  second.validate();
  third.validate();
  require_positive_separation(xi_over_xiT);
}

Complex ladder_coefficient(const FourierSeries& b, int m, double s, LadderSign sign) {
  const double sgn = sign_of(sign);
  const int w = b.half_width();
  Complex sum{};
  for (int j = std::max(-w, m - w); j <= std::min(w, m + w); ++j) {
    sum += b.at(j) * std::conj(b.at(j - m)) * std::polar(1.0, sgn * kPi * (2.0 * j - m) * s);
  }
  return sum;
}

FringeSpectrum fringe_spectrum(const FourierSeries& a, const FourierSeries& b, double xi_over_xiT,
                               LadderSign sign) {
  require_positive_separation(xi_over_xiT);
  const double sgn = sign_of(sign);
  const double cut = l_cut(a);
  FringeSpectrum out{FourierSeries(SeriesKind::intensity, a.half_width())};
  for (int l = -a.half_width(); l <= a.half_width(); ++l) {
    const Complex al = a.at(l);
    if (std::abs(al) < cut) continue;
    out.density[-l] = al * ladder_term(b, l, xi_over_xiT, sgn);
  }
  return out;
}

FringeSpectrum fringe_spectrum(const InterferometerConfig& config, LadderSign sign) {
  config.validate();
  return fringe_spectrum(intensity_coefficients(config.first), fourier_coefficients(config.second),
                         config.xi_over_xiT, sign);
}

DetectedIntensities detected_intensities(const FringeSpectrum& spectrum, const FourierSeries& c3) {
  const auto& s = spectrum.density;
  Complex masked{};
  for (int n = -s.half_width(); n <= s.half_width(); ++n) masked += s.at(n) * c3.at(-n);
  return {masked.real(), spectrum.mean()};
}

double masked_intensity(const FourierSeries& a, const FourierSeries& b, const FourierSeries& c3,
                        double xi_over_xiT, LadderSign sign) {
  require_positive_separation(xi_over_xiT);
  const double sgn = sign_of(sign);
  const double cut = l_cut(a);
  const int w = std::min(a.half_width(), c3.half_width());
  Complex masked{};
  for (int l = -w; l <= w; ++l) {
    const Complex weight = a.at(l) * c3.at(l);
    if (std::abs(a.at(l)) < cut || weight == Complex{}) continue;
    masked += weight * ladder_term(b, l, xi_over_xiT, sgn);
  }
  return masked.real();
}

double detected_intensity(const InterferometerConfig& config) {
  const FringeSpectrum s = fringe_spectrum(config);
  if (!config.third_present) return s.mean();
  return detected_intensities(s, intensity_coefficients(config.third)).with_third;
}

}  // namespace tli
