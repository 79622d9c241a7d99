#include "tli/fourier_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tli {

FourierSeries::FourierSeries(SeriesKind kind, int half_width)
    : kind_(kind), half_width_(half_width), coeffs_(static_cast<std::size_t>(2 * half_width + 1)) {
  if (half_width < 0) throw std::invalid_argument("FourierSeries: negative half width");
}

FourierSeries::FourierSeries(SeriesKind kind, std::vector<Complex> coefficients)
    : kind_(kind), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() % 2 == 0) throw std::invalid_argument("FourierSeries: need an odd coefficient count");
  half_width_ = static_cast<int>(coeffs_.size() / 2);
}

FourierSeries FourierSeries::unit(SeriesKind kind) {
  FourierSeries s(kind, 0);
  s[0] = 1.0;
  return s;
}

Complex FourierSeries::evaluate(double x) const {
  // twiddle advanced by multiplication, re-anchored every 32 steps
  const Complex step = std::polar(1.0, 2.0 * std::numbers::pi * x);
  Complex up{1.0, 0.0};
  Complex sum = at(0);
  for (int n = 1; n <= half_width_; ++n) {
    up *= step;
    if (n % 32 == 0) up = std::polar(1.0, 2.0 * std::numbers::pi * x * n);
    sum += at(n) * up + at(-n) * std::conj(up);
  }
  return sum;
}

std::vector<double> FourierSeries::sample_real(std::size_t points) const {
  std::vector<double> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    out[k] = evaluate(static_cast<double>(k) / static_cast<double>(points)).real();
  }
  return out;
}

double FourierSeries::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

int FourierSeries::tail_half_width(double rel_tol) const {
  const double cut = rel_tol * max_abs();
  int last = 0;
  for (int n = half_width_; n >= 1; --n) {
    if (std::abs(at(n)) >= cut || std::abs(at(-n)) >= cut) {
      last = n;
      break;
    }
  }
  int width = last + 1;
  if (width % 2 != 0) ++width;
  return std::max(width, 2);
}

FourierSeries FourierSeries::resized(int half_width) const {
  FourierSeries out(kind_, half_width);
  const int w = std::min(half_width, half_width_);
  for (int n = -w; n <= w; ++n) out[n] = at(n);
  return out;
}

FourierSeries FourierSeries::product(const FourierSeries& a, const FourierSeries& b, SeriesKind kind) {
  const int wa = a.half_width();
  const int wb = b.half_width();
  FourierSeries out(kind, wa + wb);
  for (int i = -wa; i <= wa; ++i) {
    const Complex ai = a.at(i);
    if (ai == Complex{}) continue;
    for (int j = -wb; j <= wb; ++j) out[i + j] += ai * b.at(j);
  }
  return out;
}

FourierSeries FourierSeries::modulus_squared() const {
  FourierSeries out(SeriesKind::intensity, 2 * half_width_);
  for (int n = -2 * half_width_; n <= 2 * half_width_; ++n) {
    Complex sum{};
    const int lo = std::max(-half_width_, n - half_width_);
    const int hi = std::min(half_width_, n + half_width_);
    for (int j = lo; j <= hi; ++j) sum += at(j) * std::conj(at(j - n));
    out[n] = sum;
  }
  return out;
}

double FourierSeries::hermitian_defect() const {
  double d = 0.0;
  for (int n = 0; n <= half_width_; ++n) d = std::max(d, std::abs(at(-n) - std::conj(at(n))));
  return d;
}

}  // namespace tli
