#pragma once

#include <complex>

namespace dac {

// Branch k of the Lambert W function: the solution w of w e^w = z whose
// imaginary part lies in the k-th strip of the standard (Corless et al.)
// branch structure. Branch-aware initial guess refined by Halley steps.
//
// Points exactly on the negative real axis are evaluated as the limit from
// above (Im z -> 0+), regardless of the sign of a zero imaginary part.
//
// Throws InputError for z = 0 with k != 0, NumericalError if Halley's
// iteration does not settle within 100 steps.
std::complex<double> lambert_w(int k, std::complex<double> z);

// Taylor series of W_0 about the origin, sum_n (-n)^(n-1)/n! z^n, truncated
// once a term drops below 1e-15 in magnitude. Requires |z| <= 1/e.
std::complex<double> w0_series(std::complex<double> z);

}  // namespace dac
