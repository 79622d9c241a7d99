#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tli {

using Complex = std::complex<double>;

/// What a series represents: a transmission amplitude t(x) or an intensity
/// profile such as |t(x)|^2 or a particle density.
enum class SeriesKind { amplitude, intensity };

/// Truncated Fourier series f(x) = sum_n c_n exp(2 pi i n x) on the common
/// unit cell x in [0, 1) (positions in units of the laser wavelength).
///
/// Coefficients are stored for n in [-half_width, half_width]; indices outside
/// that range read as zero.
class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(SeriesKind kind, int half_width);
  FourierSeries(SeriesKind kind, std::vector<Complex> coefficients);

  /// The series of the constant function 1.
  static FourierSeries unit(SeriesKind kind);

  SeriesKind kind() const { return kind_; }
  int half_width() const { return half_width_; }

  Complex at(int n) const {
    return (n < -half_width_ || n > half_width_) ? Complex{}
                                                 : coeffs_[static_cast<std::size_t>(n + half_width_)];
  }
  Complex& operator[](int n) { return coeffs_[static_cast<std::size_t>(n + half_width_)]; }

  /// Coefficients ordered from -half_width to +half_width.
  std::span<const Complex> coefficients() const { return coeffs_; }

  Complex evaluate(double x) const;
  std::vector<double> sample_real(std::size_t points) const;

  double max_abs() const;

  /// Smallest even N >= 2 such that every |c_n| with |n| >= N lies below
  /// rel_tol * max_n |c_n|.
  int tail_half_width(double rel_tol) const;

  /// Copy restricted (or zero-padded) to the given half width.
  FourierSeries resized(int half_width) const;

  /// Copy with the negligible tail (rel_tol) removed.
  FourierSeries trimmed(double rel_tol) const { return resized(tail_half_width(rel_tol)); }

  /// Coefficients of the pointwise product of the two represented functions.
  static FourierSeries product(const FourierSeries& a, const FourierSeries& b, SeriesKind kind);

  /// Coefficients of |f(x)|^2, i.e. the autocorrelation sum_j c_j conj(c_{j-n}).
  FourierSeries modulus_squared() const;

  /// Largest |c_{-n} - conj(c_n)|; zero for a real-valued function.
  double hermitian_defect() const;

 private:
  SeriesKind kind_ = SeriesKind::amplitude;
  int half_width_ = 0;
  std::vector<Complex> coeffs_{Complex{1.0, 0.0}};
};

/// Truncation threshold shared by all analytic expansions.
inline constexpr double kTailTolerance = 1e-14;

}  // namespace tli
