#include "tli/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tli/parallel.hpp"

namespace tli::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

double signed_frequency(std::size_t i, std::size_t n) {
  return i < n / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(n);
}

}  // namespace

FieldGrid FieldGrid::plane_wave(std::size_t points, double bloch_k) {
  FieldGrid f{std::vector<Complex>(points, Complex{1.0, 0.0}), bloch_k};
  f.validate();
  return f;
}

double FieldGrid::mean_intensity() const {
  double s = 0.0;
  for (const auto& v : samples) s += std::norm(v);
  return s / static_cast<double>(samples.size());
}

void FieldGrid::apply(const GratingSpec& g) {
  const double h = spacing();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    samples[k] *= transmission_amplitude(g, h * static_cast<double>(k));
  }
}

void FieldGrid::validate() const {
  if (!is_power_of_two(samples.size()) || samples.size() < kMinGridPoints) {
    throw std::invalid_argument("FieldGrid: need a power-of-two size >= " + std::to_string(kMinGridPoints));
  }
}

struct Propagator::Plans {
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::vector<Complex> kernel;
  double kernel_k = NAN;
  double kernel_xi = NAN;
};

Propagator::Propagator(std::size_t points) : points_(points), plans_(std::make_unique<Plans>()) {
  if (!is_power_of_two(points) || points < kMinGridPoints) {
    throw std::invalid_argument("Propagator: need a power-of-two size >= " + std::to_string(kMinGridPoints));
  }
  std::lock_guard lock(planner_mutex());
  plans_->buffer = fftw_alloc_complex(points);
  const int n = static_cast<int>(points);
  plans_->forward = fftw_plan_dft_1d(n, plans_->buffer, plans_->buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_1d(n, plans_->buffer, plans_->buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  plans_->kernel.resize(points);
}

Propagator::~Propagator() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->forward);
  fftw_destroy_plan(plans_->backward);
  fftw_free(plans_->buffer);
}

void Propagator::propagate(FieldGrid& field, double xi_over_xiT) {
  if (field.size() != points_) throw std::invalid_argument("Propagator: grid size mismatch");
  auto& p = *plans_;
  if (!(p.kernel_k == field.bloch_k && p.kernel_xi == xi_over_xiT)) {
    const double scale = 1.0 / static_cast<double>(points_);
    const double c = xi_over_xiT / (16.0 * kPi);
    for (std::size_t i = 0; i < points_; ++i) {
      const double q = field.bloch_k + 2.0 * kPi * signed_frequency(i, points_);
      p.kernel[i] = std::polar(scale, -c * q * q);
    }
    p.kernel_k = field.bloch_k;
    p.kernel_xi = xi_over_xiT;
  }
  auto* buf = reinterpret_cast<Complex*>(p.buffer);
  std::copy(field.samples.begin(), field.samples.end(), buf);
  fftw_execute(p.forward);
  for (std::size_t i = 0; i < points_; ++i) buf[i] *= p.kernel[i];
  fftw_execute(p.backward);
  std::copy(buf, buf + points_, field.samples.begin());
}

FieldGrid propagate(const FieldGrid& field, double xi_over_xiT) {
  field.validate();
  FieldGrid out = field;
  Propagator(field.size()).propagate(out, xi_over_xiT);
  return out;
}

OracleResolution resolve(const InterferometerConfig& config, const OracleSettings& settings) {
  config.validate();
  OracleResolution r{};
  r.first_harmonics = fourier_coefficients(config.first).half_width();
  r.second_harmonics = fourier_coefficients(config.second).half_width();
  const auto field_band = static_cast<std::size_t>(r.first_harmonics + r.second_harmonics);
  r.longest_cross_index = 4 * r.first_harmonics + 2 * r.second_harmonics;

  const std::size_t min_grid = std::max(kMinGridPoints, kGridPointsPerHarmonic * field_band);
  const std::size_t min_k = std::max(kMinKSamples, kSamplesPerCrossPeriod * static_cast<std::size_t>(r.longest_cross_index));

  r.grid_points = settings.grid_points == 0 ? next_power_of_two(min_grid) : settings.grid_points;
  r.k_samples = settings.k_samples == 0 ? min_k : settings.k_samples;
  if (!is_power_of_two(r.grid_points) || r.grid_points < min_grid) {
    throw std::invalid_argument("oracle: grid of " + std::to_string(r.grid_points) +
                                " points under-resolves the field (need a power of two >= " +
                                std::to_string(min_grid) + ")");
  }
  if (r.k_samples < min_k) {
    throw std::invalid_argument("oracle: " + std::to_string(r.k_samples) +
                                " K samples under-resolve the averaging window (need >= " + std::to_string(min_k) +
                                ", i.e. " + std::to_string(kSamplesPerCrossPeriod) +
                                " per shortest cross-term period)");
  }
  return r;
}

OraclePattern incoherent_pattern(const InterferometerConfig& config, const OracleSettings& settings) {
  const OracleResolution res = resolve(config, settings);
  const std::size_t n = res.grid_points;
  const double xi = config.xi_over_xiT;
  const double window = 8.0 * kPi / xi;

  FieldGrid first = FieldGrid::plane_wave(n);
  first.apply(config.first);
  std::vector<Complex> second(n);
  for (std::size_t k = 0; k < n; ++k) {
    second[k] = transmission_amplitude(config.second, static_cast<double>(k) / static_cast<double>(n));
  }

  const std::size_t blocks = std::min(thread_count(), res.k_samples);
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));
  parallel_for(blocks, [&](std::size_t b) {
    Propagator prop(n);
    auto& acc = partial[b];
    const std::size_t begin = res.k_samples * b / blocks;
    const std::size_t end = res.k_samples * (b + 1) / blocks;
    for (std::size_t s = begin; s < end; ++s) {
      FieldGrid field = first;
      field.bloch_k = window * static_cast<double>(s) / static_cast<double>(res.k_samples);
      prop.propagate(field, xi);
      for (std::size_t k = 0; k < n; ++k) field.samples[k] *= second[k];
      prop.propagate(field, xi);
      for (std::size_t k = 0; k < n; ++k) acc[k] += std::norm(field.samples[k]);
    }
  });

  OraclePattern out{std::vector<double>(n, 0.0), res};
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < n; ++k) out.density[k] += part[k];
  }
  for (auto& v : out.density) v /= static_cast<double>(res.k_samples);
  return out;
}

Comparison compare(const FringeSpectrum& analytic, const std::vector<double>& oracle_density) {
  const auto reference = analytic.density.sample_real(oracle_density.size());
  double diff2 = 0.0, ref2 = 0.0, worst = 0.0;
  for (std::size_t k = 0; k < oracle_density.size(); ++k) {
    const double d = reference[k] - oracle_density[k];
    diff2 += d * d;
    ref2 += oracle_density[k] * oracle_density[k];
    worst = std::max(worst, std::abs(d));
  }
  if (diff2 == 0.0) return {0.0, 0.0};
  return {std::sqrt(diff2 / ref2), worst};
}

}  // namespace tli::oracle
