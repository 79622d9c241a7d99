#pragma once

// Test-only reference computations, independent of the analytic series.

#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace tli::testing {

using Complex = std::complex<double>;

/// (1/D) \int_0^D f(x) exp(-2 pi i n x) dx by the periodic trapezoid rule,
/// spectrally accurate for smooth periodic f.
inline Complex fourier_quadrature(const std::function<Complex(double)>& f, int n, int points = 8192) {
  Complex sum{};
  for (int k = 0; k < points; ++k) {
    const double x = static_cast<double>(k) / points;
    sum += f(x) * std::polar(1.0, -2.0 * std::numbers::pi * n * x);
  }
  return sum / static_cast<double>(points);
}

}  // namespace tli::testing
