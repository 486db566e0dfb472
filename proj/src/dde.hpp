#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "dac/errors.hpp"

namespace dac::detail {

// Fixed-step integrator for Y'(t) = M (Y(t - tau) + U(t - tau)), Y(0) = 0,
// with Y and U zero before t = 0. The step is snapped so tau = m h.
//
// Classical RK4; the delayed argument at a half step is a cubic Hermite
// interpolant built from stored states and one-sided derivatives, so jumps
// of U at grid points do not leak across steps. `input` provides
// value(t) (right-continuous) and value_left(t), both matrices shaped as Y.
struct DdeGrid {
  double h = 0.0;
  int m = 0;  // tau / h
  long steps = 0;
};

inline DdeGrid snap_grid(double tau, double h, double horizon) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("step must be positive");
  if (!(tau >= 0.0)) throw InputError("delay must be nonnegative");
  if (!(horizon > 0.0)) throw InputError("horizon must be positive");
  DdeGrid g;
  if (tau > 0.0) {
    g.m = std::max(1, static_cast<int>(std::lround(tau / h)));
    g.h = tau / g.m;
    const double ratio = tau / g.h;
    if (std::abs(ratio - std::round(ratio)) > 1e-9) {
      throw InputError("delay cannot be snapped to the integration grid");
    }
  } else {
    g.h = h;
  }
  g.steps = static_cast<long>(std::ceil(horizon / g.h - 1e-9));
  return g;
}

template <class Input>
std::vector<Eigen::MatrixXd> integrate_dde(const Eigen::MatrixXd& M, const Input& input,
                                           const DdeGrid& grid, Eigen::Index cols) {
  const Eigen::Index n = M.rows();
  const double h = grid.h;
  const int m = grid.m;
  const long steps = grid.steps;
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(n, cols);

  std::vector<Eigen::MatrixXd> y(steps + 1, zero);
  if (m == 0) {
    for (long k = 0; k < steps; ++k) {
      const double t = k * h;
      const Eigen::MatrixXd uh = input.value(t + 0.5 * h);
      const Eigen::MatrixXd k1 = M * (y[k] + input.value(t));
      const Eigen::MatrixXd k2 = M * (y[k] + 0.5 * h * k1 + uh);
      const Eigen::MatrixXd k3 = M * (y[k] + 0.5 * h * k2 + uh);
      const Eigen::MatrixXd k4 = M * (y[k] + h * k3 + input.value_left(t + h));
      y[k + 1] = y[k] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
  }

  // Right and left derivative limits at each grid point.
  std::vector<Eigen::MatrixXd> d_right(steps + 1, zero);
  std::vector<Eigen::MatrixXd> d_left(steps + 1, zero);
  auto state = [&](long j) -> const Eigen::MatrixXd& { return j < 0 ? zero : y[j]; };
  auto delayed_right = [&](long k) -> Eigen::MatrixXd {
    const long j = k - m;
    if (j < 0) return zero;
    return M * (y[j] + input.value(j * h));
  };
  auto delayed_left = [&](long k) -> Eigen::MatrixXd {
    const long j = k - m;
    if (j <= 0) return zero;
    return M * (y[j] + input.value_left(j * h));
  };

  d_right[0] = delayed_right(0);
  for (long k = 0; k < steps; ++k) {
    const long j = k - m;  // delayed interval [t_j, t_{j+1}]
    Eigen::MatrixXd mid = zero;
    if (j >= 0) {
      const Eigen::MatrixXd& y0 = state(j);
      const Eigen::MatrixXd& y1 = state(j + 1);
      const Eigen::MatrixXd y_mid = 0.5 * (y0 + y1) + (h / 8.0) * (d_right[j] - d_left[j + 1]);
      mid = M * (y_mid + input.value((j + 0.5) * h));
    }
    const Eigen::MatrixXd& f0 = d_right[k];
    const Eigen::MatrixXd f1 = delayed_left(k + 1);
    y[k + 1] = y[k] + (h / 6.0) * (f0 + 4.0 * mid + f1);
    d_left[k + 1] = f1;
    d_right[k + 1] = delayed_right(k + 1);
  }
  return y;
}

}  // namespace dac::detail
