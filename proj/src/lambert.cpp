#include "dac/lambert.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dac/errors.hpp"

namespace dac {

namespace {

using cplx = std::complex<double>;

constexpr double kInvE = 0.36787944117144232159553;
constexpr int kMaxHalley = 100;
constexpr double kHalleyTol = 1e-15;
constexpr long kMaxSeriesTerms = 200000;

// Series about the branch point -1/e in p = sqrt(2(ez + 1)); the sign of p
// selects W_0 (+) or the adjacent W_{-1}/W_1 (-).
cplx branch_point_seed(cplx z, bool negate) {
  cplx p = std::sqrt(2.0 * (std::numbers::e * z + 1.0));
  if (negate) p = -p;
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

// (3, 2) Pade approximant of W_0 about the origin.
cplx pade_seed(cplx z) {
  const cplx num = 12.85106382978723404255 + z * (12.34042553191489361902 + z);
  const cplx den = 32.53191489361702127660 + z * (14.34042553191489361702 + z);
  return z * num / den;
}

cplx asymptotic_seed(cplx z, int k) {
  const cplx l1 = std::log(z) + cplx(0.0, 2.0 * std::numbers::pi * k);
  const cplx l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

cplx initial_guess(int k, cplx z) {
  const bool near_branch = std::abs(z + kInvE) < 0.3;
  if (k == 0) {
    if (near_branch) return branch_point_seed(z, false);
    if (z.real() > -1.0 && z.real() < 1.5 && std::abs(z.imag()) < 1.0 &&
        z.real() > -2.5 * std::abs(z.imag()) - 0.2) {
      return pade_seed(z);
    }
    return asymptotic_seed(z, 0);
  }
  if (k == -1) {
    if (near_branch && z.imag() >= 0.0) return branch_point_seed(z, true);
    if (z.imag() == 0.0 && z.real() < 0.0 && z.real() > -kInvE) {
      const double l1 = std::log(-z.real());
      return {l1 - std::log(-l1), 0.0};
    }
    return asymptotic_seed(z, -1);
  }
  if (k == 1 && near_branch && z.imag() < 0.0) return branch_point_seed(z, true);
  return asymptotic_seed(z, k);
}

}  // namespace

cplx lambert_w(int k, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InputError("lambert_w: argument must be finite");
  }
  if (z == cplx(0.0, 0.0)) {
    if (k == 0) return {0.0, 0.0};
    throw InputError("lambert_w: branch " + std::to_string(k) + " is singular at z = 0");
  }
  // Normalise a signed zero so that the negative real axis is always read
  // from above.
  if (z.imag() == 0.0) z = {z.real(), 0.0};

  // At the branch point itself Halley's step divides by w + 1 = 0.
  if ((k == 0 || k == -1) && z.imag() == 0.0 && std::abs(z.real() + kInvE) <= 1e-16) {
    return {-1.0, 0.0};
  }

  cplx w = initial_guess(k, z);
  for (int it = 0; it < kMaxHalley; ++it) {
    cplx next;
    if (w.real() >= 0.0) {
      // Scaled by e^{-w} to keep the exponential bounded.
      const cplx ew = std::exp(-w);
      const cplx f = w - z * ew;
      next = w - f / (w + 1.0 - (w + 2.0) * f / (2.0 * w + 2.0));
    } else {
      const cplx ew = std::exp(w);
      const cplx f = w * ew - z;
      next = w - f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
    }
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
    if (std::abs(next - w) <= kHalleyTol * std::abs(next)) return next;
    w = next;
  }
  throw NumericalError("lambert_w: Halley iteration did not converge");
}

cplx w0_series(cplx z) {
  if (std::abs(z) > kInvE) {
    throw InputError("w0_series: requires |z| <= 1/e");
  }
  // term_{n+1} = -(1 + 1/n)^{n-1} z term_n, term_1 = z
  cplx term = z;
  cplx sum = 0.0;
  for (long n = 1; n <= kMaxSeriesTerms; ++n) {
    sum += term;
    if (std::abs(term) < 1e-15) break;
    const double nd = static_cast<double>(n);
    const double growth = std::exp((nd - 1.0) * std::log1p(1.0 / nd));
    term *= -growth * z;
  }
  return sum;
}

}  // namespace dac
