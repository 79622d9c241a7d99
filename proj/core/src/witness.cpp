#include "tli/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tli/parallel.hpp"

namespace tli {
namespace {

constexpr double kPi = std::numbers::pi;

std::size_t slot(SecondSetting s) { return static_cast<std::size_t>(s); }

// I_N: unit-cell mean of the density, A_0 * sum_j |b_j|^2 (separation independent).
double mean_density(const FourierSeries& a, const FourierSeries& b) {
  return (a.at(0) * ladder_coefficient(b, 0, 0.0)).real();
}

void require_ordered(double y, double n) {
  const double slack = 1e-12 * std::max(1.0, n);
  if (y < -slack || y > n + slack) throw std::invalid_argument("witness: need 0 <= I_Y <= I_N");
}

// Golden-section maximisation of f on [lo, hi].
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

WitnessSetup WitnessSetup::symmetric(double n0_second, double n0_third, double beta) {
  WitnessSetup s;
  s.n0_first = n0_second;
  s.n0_second = n0_second;
  s.n0_second_b = n0_second;
  s.n0_third = n0_third;
  s.beta_first = s.beta_a = s.beta_b = s.beta_third = beta;
  return s;
}

GratingSpec WitnessSetup::first_grating() const { return GratingSpec::one_colour(n0_first, beta_first); }
GratingSpec WitnessSetup::third_grating() const { return GratingSpec::one_colour(n0_third, beta_third); }

GratingSpec WitnessSetup::second_grating(SecondSetting s) const {
  switch (s) {
    case SecondSetting::zero: return GratingSpec::one_colour(n0_second, beta_a);
    case SecondSetting::plus: return balanced_two_colour(n0_second, n0_second_b, beta_a, beta_b, NodeParity::plus);
    case SecondSetting::minus: return balanced_two_colour(n0_second, n0_second_b, beta_a, beta_b, NodeParity::minus);
  }
  throw std::logic_error("unknown SecondSetting");
}

void WitnessSetup::validate() const {
  first_grating().validate();
  third_grating().validate();
  second_grating(SecondSetting::plus).validate();
}

double expectation_q(double IY0, double IN0) {
  if (!(IN0 >= kMinFlux)) throw std::domain_error("expectation_q: no flux reaches the detector plane");
  require_ordered(IY0, IN0);
  return 2.0 * IY0 / IN0 - 1.0;
}

double expectation_qm(double IYp, double IYm, double INp, double INm) {
  const double denom = INp + INm;
  if (!(denom >= kMinFlux)) throw std::domain_error("expectation_qm: summed flux is zero");
  require_ordered(IYp + IYm, denom);
  return 2.0 * (IYp + IYm) / denom - 1.0;
}

double witness(double Q, double Qm) { return std::abs(Q - Qm); }

double revised_bound(double delta_N, double IN0) {
  const double denom = IN0 - delta_N;
  if (!(denom >= kMinFlux)) throw std::domain_error("revised_bound: I_N0 - delta_N is degenerate");
  return 2.0 * std::abs(delta_N) / denom;
}

WitnessModel::WitnessModel(const WitnessSetup& setup) : setup_(setup) {
  setup_.validate();
  first_intensity_ = intensity_coefficients(setup_.first_grating());
  third_intensity_ = intensity_coefficients(setup_.third_grating());
  for (auto s : {SecondSetting::zero, SecondSetting::plus, SecondSetting::minus}) {
    second_[slot(s)] = fourier_coefficients(setup_.second_grating(s));
  }
}

const FourierSeries& WitnessModel::second_amplitude(SecondSetting s) const { return second_[slot(s)]; }

WitnessPoint WitnessModel::evaluate(double xi) const {
  WitnessPoint p;
  p.xi_over_xiT = xi;
  auto masked = [&](SecondSetting s) {
    return masked_intensity(first_intensity_, second_[slot(s)], third_intensity_, xi);
  };
  p.IY0 = masked(SecondSetting::zero);
  p.IYp = masked(SecondSetting::plus);
  p.IYm = masked(SecondSetting::minus);
  p.IN0 = mean_density(first_intensity_, second_[slot(SecondSetting::zero)]);
  p.INp = mean_density(first_intensity_, second_[slot(SecondSetting::plus)]);
  p.INm = mean_density(first_intensity_, second_[slot(SecondSetting::minus)]);
  p.Q = expectation_q(p.IY0, p.IN0);
  p.Qm = expectation_qm(p.IYp, p.IYm, p.INp, p.INm);
  p.W = witness(p.Q, p.Qm);
  p.delta_Y = p.IY0 - p.IYp - p.IYm;
  p.delta_N = p.IN0 - p.INp - p.INm;
  p.W_delta = revised_bound(p.delta_N, p.IN0);
  return p;
}

void validate_xi_grid(std::span<const double> xi_grid) {
  if (xi_grid.empty()) throw std::invalid_argument("xi grid is empty");
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    if (!(xi_grid[i] > 0.0) || !std::isfinite(xi_grid[i])) {
      throw std::invalid_argument("xi grid must be finite and strictly positive");
    }
    if (i > 0 && !(xi_grid[i] > xi_grid[i - 1])) throw std::invalid_argument("xi grid must be strictly increasing");
  }
}

std::vector<WitnessPoint> scan_xi(const WitnessSetup& setup, std::span<const double> xi_grid) {
  validate_xi_grid(xi_grid);
  const WitnessModel model(setup);
  std::vector<WitnessPoint> out(xi_grid.size());
  parallel_for(xi_grid.size(), [&](std::size_t i) { out[i] = model.evaluate(xi_grid[i]); });
  return out;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {start};
  std::vector<double> v(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = start + step * static_cast<double>(i);
  v.back() = stop;
  return v;
}

std::vector<WmaxRow> wmax_scan(std::span<const double> n0_grid, std::span<const double> n0_third_values,
                               const WmaxOptions& options) {
  if (!(options.xi_low > 0.0) || !(options.xi_high > options.xi_low) || options.grid_points < 3) {
    throw std::invalid_argument("wmax_scan: window must satisfy 0 < low < high with >= 3 points");
  }
  const auto grid = linspace(options.xi_low, options.xi_high, options.grid_points);
  const double step = grid[1] - grid[0];
  std::vector<WmaxRow> rows(n0_grid.size() * n0_third_values.size());
  parallel_for(rows.size(), [&](std::size_t k) {
    const double n0 = n0_grid[k % n0_grid.size()];
    const double n3 = n0_third_values[k / n0_grid.size()];
    const WitnessModel model(WitnessSetup::symmetric(n0, n3, options.beta));
    std::size_t best = 0;
    double best_w = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = model.evaluate(grid[i]).W;
      if (w > best_w) { best_w = w; best = i; }
    }
    double xi_best = grid[best];
    const double lo = std::max(options.xi_low, xi_best - step);
    const double hi = std::min(options.xi_high, xi_best + step);
    const auto [xr, wr] = golden_max([&](double xi) { return model.evaluate(xi).W; }, lo, hi, 1e-7);
    if (wr > best_w) { best_w = wr; xi_best = xr; }
    const WitnessPoint p = model.evaluate(xi_best);
    rows[k] = WmaxRow{n0, n3, xi_best, p.W, p.W_delta};
  });
  return rows;
}

std::vector<Peak> find_local_maxima(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("find_local_maxima: size mismatch");
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    // parabola through the three samples (uneven spacing allowed)
    const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
    const double d1 = (y[i] - y[i - 1]) / (x1 - x0);
    const double d2 = (y[i + 1] - y[i]) / (x2 - x1);
    const double curv = (d2 - d1) / (x2 - x0);
    Peak p{i, x1, y[i]};
    if (curv < 0.0) {
      const double slope_mid = d1 + curv * (x1 - x0);  // slope of the fitted parabola at x1
      const double dx = -slope_mid / (2.0 * curv);
      if (std::abs(dx) <= std::max(x1 - x0, x2 - x1)) {
        p.position = x1 + dx;
        p.height = y[i] + slope_mid * dx + curv * dx * dx;
      }
    }
    peaks.push_back(p);
  }
  return peaks;
}

double full_width_half_max(std::span<const double> x, std::span<const double> y, std::size_t peak_index) {
  const double half = 0.5 * y[peak_index];
  double left = -std::numeric_limits<double>::infinity();
  for (std::size_t i = peak_index; i > 0; --i) {
    if (y[i - 1] < half) {
      left = x[i - 1] + (half - y[i - 1]) * (x[i] - x[i - 1]) / (y[i] - y[i - 1]);
      break;
    }
  }
  double right = std::numeric_limits<double>::infinity();
  for (std::size_t i = peak_index; i + 1 < y.size(); ++i) {
    if (y[i + 1] < half) {
      right = x[i] + (y[i] - half) * (x[i + 1] - x[i]) / (y[i] - y[i + 1]);
      break;
    }
  }
  return right - left;
}

std::vector<double> invasivity_profile(double n0_total, std::span<const double> x_grid) {
  std::vector<double> out(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double a = std::cos(kPi * x_grid[i] - kPi / 4.0);
    const double b = std::cos(2.0 * kPi * x_grid[i]);
    out[i] = n0_total * (a * a - 0.25 * b * b);
  }
  return out;
}

InvasivityMax invasivity_max(double n0_total, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("invasivity_max: need 0 < T_w < 1");
  if (!(n0_total > 0.0)) throw std::invalid_argument("invasivity_max: need n0 > 0");
  const GratingSpec plus = balanced_two_colour(n0_total, n0_total, 1.0, 1.0, NodeParity::plus);
  const double limit = -std::log(threshold);
  const double centre = -0.25;
  auto open = [&](double x) { return absorbed_photons(plus, x) <= limit; };

  // march outwards to the first closed sample, then bisect the edge
  auto edge = [&](double direction) {
    constexpr int kSteps = 8192;
    const double h = 0.5 / kSteps;
    for (int k = 1; k <= kSteps; ++k) {
      const double x = centre + direction * h * k;
      if (!open(x)) {
        double inside = centre + direction * h * (k - 1);
        double outside = x;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (inside + outside);
          (open(mid) ? inside : outside) = mid;
        }
        return inside;
      }
    }
    throw std::domain_error("invasivity_max: opening covers the whole period");
  };
  InvasivityMax r{};
  r.opening_left = edge(-1.0);
  r.opening_right = edge(1.0);

  constexpr std::size_t kSamples = 4097;
  const auto xs = linspace(r.opening_left, r.opening_right, kSamples);
  const auto delta = invasivity_profile(n0_total, xs);
  r.exact = *std::max_element(delta.begin(), delta.end());
  r.estimate = limit * limit / (16.0 * n0_total);
  return r;
}

}  // namespace tli
