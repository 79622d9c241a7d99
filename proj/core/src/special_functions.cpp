#include "tli/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tli::special {
namespace {

constexpr double kRescaleAbove = 1e250;

int start_order(Complex z, int order_max) {
  const double scale = std::max(static_cast<double>(order_max), std::abs(z));
  return static_cast<int>(std::ceil(scale + 40.0 + 6.0 * std::sqrt(scale + 1.0))) + 2;
}

struct MillerResult {
  std::vector<Complex> ratios;  // proportional to I_n(z), n = 0 .. order_max
  Complex normalisation;        // sum_n (sign)^n * ratios[n] over all n in Z
};

// Backward recurrence I_{n-1} = (2n/z) I_n + I_{n+1}; arbitrary start values.
MillerResult miller(Complex z, int order_max, double sign) {
  const int top = start_order(z, order_max);
  std::vector<Complex> values(static_cast<std::size_t>(order_max) + 1);
  Complex upper{0.0, 0.0};
  Complex current{1e-300, 0.0};
  Complex sum{0.0, 0.0};
  const Complex inv_z = 1.0 / z;
  for (int n = top; n >= 1; --n) {
    const Complex lower = 2.0 * static_cast<double>(n) * inv_z * current + upper;
    // current holds I_n, lower holds I_{n-1}
    sum += 2.0 * ((n % 2 == 0) ? 1.0 : sign) * current;
    if (n <= order_max) values[static_cast<std::size_t>(n)] = current;
    upper = current;
    current = lower;
    if (std::abs(current) > kRescaleAbove) {
      const double f = 1.0 / std::abs(current);
      current *= f;
      upper *= f;
      sum *= f;
      for (int k = n; k <= order_max; ++k) values[static_cast<std::size_t>(k)] *= f;
    }
  }
  values[0] = current;
  sum += current;
  return {std::move(values), sum};
}

}  // namespace

std::vector<Complex> exp_scaled_bessel_i_sequence(Complex z, int order_max) {
  if (order_max < 0) throw std::invalid_argument("bessel: negative order_max");
  std::vector<Complex> out(static_cast<std::size_t>(order_max) + 1, Complex{0.0, 0.0});
  if (z == Complex{0.0, 0.0}) {
    out[0] = 1.0;
    return out;
  }
  if (z.real() <= 0.0) {
    // exp(-z) = sum (-1)^n I_n  =>  exp(z) I_n = ratio_n / sum
    auto m = miller(z, order_max, -1.0);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = m.ratios[n] / m.normalisation;
    return out;
  }
  // exp(z) = sum I_n  =>  exp(z) I_n = exp(2z) ratio_n / sum
  auto m = miller(z, order_max, 1.0);
  const Complex e2z = std::exp(2.0 * z);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = e2z * (m.ratios[n] / m.normalisation);
  return out;
}

std::vector<Complex> bessel_i_sequence(Complex z, int order_max) {
  if (order_max < 0) throw std::invalid_argument("bessel: negative order_max");
  std::vector<Complex> out(static_cast<std::size_t>(order_max) + 1, Complex{0.0, 0.0});
  if (z == Complex{0.0, 0.0}) {
    out[0] = 1.0;
    return out;
  }
  const double sign = z.real() <= 0.0 ? -1.0 : 1.0;
  auto m = miller(z, order_max, sign);
  const Complex scale = std::exp(sign * z) / m.normalisation;
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = m.ratios[n] * scale;
  return out;
}

}  // namespace tli::special
