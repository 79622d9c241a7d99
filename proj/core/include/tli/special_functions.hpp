#pragma once

#include <complex>
#include <vector>

namespace tli::special {

using Complex = std::complex<double>;

/// Modified Bessel functions of the first kind I_0(z) .. I_{order_max}(z)
/// for complex argument.
///
/// Computed by Miller's backward recurrence, normalised with the generating
/// function identity exp(+-z) = sum_n (+-1)^n I_n(z) (sign chosen so that the
/// normalisation sum carries no cancellation). Target accuracy is 1e-12
/// relative to the largest order in the sequence for |z| up to a few hundred.
std::vector<Complex> bessel_i_sequence(Complex z, int order_max);

/// exp(z) * I_n(z) for n = 0 .. order_max. For Re z <= 0 this is bounded by
/// one and is evaluated without forming exp(z) and I_n(z) separately.
std::vector<Complex> exp_scaled_bessel_i_sequence(Complex z, int order_max);

}  // namespace tli::special
