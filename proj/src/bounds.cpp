#include "dac/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dac/errors.hpp"
#include "dac/lambert.hpp"
#include "dde.hpp"

namespace dac {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InputError(std::string(what) + " must be positive and finite");
  }
}

struct IdentityStep {
  Eigen::Index n;
  Eigen::MatrixXd value(double t) const { return (t < 0.0 ? 0.0 : 1.0) * Eigen::MatrixXd::Identity(n, n); }
  Eigen::MatrixXd value_left(double t) const {
    return (t <= 0.0 ? 0.0 : 1.0) * Eigen::MatrixXd::Identity(n, n);
  }
};

}  // namespace

void AlgorithmParams::check(bool dt) const {
  require_positive(beta, "beta");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InputError("tau must be nonnegative");
  if (d < 0) throw InputError("d must be nonnegative");
  if (dt) require_positive(delta, "delta");
}

Eigen::MatrixXd disagreement_matrix(const Eigen::MatrixXd& laplacian, double beta) {
  const Eigen::MatrixXd& r = disagreement_basis(static_cast<int>(laplacian.rows())).R;
  return -beta * r.transpose() * laplacian * r;
}

CtAdmissibleDelay ct_admissible_delay(const Spectrum& spec, double beta) {
  require_positive(beta, "beta");
  CtAdmissibleDelay out;
  out.tau_bar = std::numeric_limits<double>::infinity();
  for (const auto& lambda : spec.nonzero_eigs()) {
    const double angle = lambda.imag() == 0.0 ? kPi / 2.0 : std::abs(std::atan(lambda.real() / lambda.imag()));
    const double tau = angle / (beta * std::abs(lambda));
    out.per_eigenvalue_taus.push_back(tau);
    out.tau_bar = std::min(out.tau_bar, tau);
  }
  return out;
}

double ct_degree_bound(double d_max, double beta) {
  require_positive(d_max, "d_max");
  require_positive(beta, "beta");
  return 1.0 / (2.0 * beta * d_max);
}

double ct_rightmost_root(const Spectrum& spec, double beta, double tau) {
  require_positive(tau, "tau");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& lambda : spec.nonzero_eigs()) {
    for (int k = -1; k <= 1; ++k) {
      best = std::max(best, lambert_w(k, -beta * lambda * tau).real() / tau);
    }
  }
  return best;
}

double ct_decay_rate(const Spectrum& spec, double beta, double tau) {
  const auto admissible = ct_admissible_delay(spec, beta);
  if (!(tau >= 0.0)) throw InputError("tau must be nonnegative");
  if (tau >= admissible.tau_bar) {
    throw InadmissibleError("tau = " + std::to_string(tau) + " is not below tau_bar = " +
                            std::to_string(admissible.tau_bar));
  }
  const auto eigs = spec.nonzero_eigs();
  if (tau == 0.0) {
    double min_re = std::numeric_limits<double>::infinity();
    for (const auto& lambda : eigs) min_re = std::min(min_re, lambda.real());
    return beta * min_re;
  }
  double max_re = -std::numeric_limits<double>::infinity();
  for (const auto& lambda : eigs) {
    max_re = std::max(max_re, lambert_w(0, -beta * lambda * tau).real());
  }
  return -max_re / tau;
}

CtEnvelope ct_envelope(const Digraph& g, double beta, double tau, std::optional<double> horizon,
                       int grid) {
  if (grid < 10) throw InputError("envelope grid must have at least 10 points");
  const Eigen::MatrixXd lap = laplacian(g);
  const Spectrum spec = compute_spectrum(lap);
  CtEnvelope env;
  env.rho_tau = ct_decay_rate(spec, beta, tau);
  env.horizon = horizon.value_or(10.0 / env.rho_tau);
  if (env.horizon < 5.0 / env.rho_tau) {
    throw InputError("envelope horizon " + std::to_string(env.horizon) + " is shorter than 5/rho = " +
                     std::to_string(5.0 / env.rho_tau));
  }
  const Eigen::MatrixXd h_mat = disagreement_matrix(lap, beta);
  const Eigen::Index n = h_mat.rows();

  // Phi = I + W with W' = H (W(t - tau) + I step(t - tau)).
  const double spacing = env.horizon / grid;
  const auto dde = detail::snap_grid(tau, tau > 0.0 ? tau / std::ceil(tau / spacing) : spacing, env.horizon);
  const auto w = detail::integrate_dde(h_mat, IdentityStep{n}, dde, n);
  env.step = dde.h;
  env.k_tau = 1.0;
  env.times.reserve(w.size());
  env.phi_norms.reserve(w.size());
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double t = static_cast<double>(k) * dde.h;
    const double norm = spectral_norm(eye + w[k]);
    if (!std::isfinite(norm)) throw NumericalError("fundamental matrix integration overflowed");
    env.times.push_back(t);
    env.phi_norms.push_back(norm);
    env.k_tau = std::max(env.k_tau, norm * std::exp(env.rho_tau * t));
  }
  return env;
}

double ct_envelope_gain(const Digraph& g, double beta, double tau, std::optional<double> horizon,
                        int grid) {
  return ct_envelope(g, beta, tau, horizon, grid).k_tau;
}

double ct_tracking_bound(double gamma, double k_tau, double rho_tau) {
  if (!(rho_tau > 0.0)) throw InadmissibleError("ct_tracking_bound: rho_tau must be positive");
  if (!(gamma >= 0.0)) throw InputError("ct_tracking_bound: gamma must be nonnegative");
  if (gamma == 0.0) return 0.0;
  return gamma * k_tau / rho_tau;
}

std::pair<double, double> dt_stepsize_range(double beta, double d_max) {
  require_positive(beta, "beta");
  require_positive(d_max, "d_max");
  return {0.0, 1.0 / (beta * d_max)};
}

bool dt_stepsize_admissible(double beta, double delta, double d_max) {
  const auto [lo, hi] = dt_stepsize_range(beta, d_max);
  return delta > lo && delta < hi;
}

DtAdmissibleDelay dt_admissible_delay(const Spectrum& spec, double beta, double delta) {
  require_positive(beta, "beta");
  require_positive(delta, "delta");
  DtAdmissibleDelay out;
  out.d_hat_min = std::numeric_limits<double>::infinity();
  for (const auto& lambda : spec.nonzero_eigs()) {
    const double s = beta * std::abs(lambda) * delta / 2.0;
    if (s >= 1.0) {
      throw InadmissibleError("stepsize too large: beta |lambda| delta / 2 = " + std::to_string(s) +
                              " >= 1");
    }
    const double arg = lambda.imag() == 0.0 ? 0.0 : std::abs(std::arg(lambda));
    const double d_hat = 0.5 * ((kPi - 2.0 * arg) / (2.0 * std::asin(s)) - 1.0);
    out.d_hat.push_back(d_hat);
    out.d_hat_min = std::min(out.d_hat_min, d_hat);
  }
  out.d_bar = static_cast<int>(std::floor(out.d_hat_min)) + 1;
  out.max_admissible_d = out.d_bar - 1;
  return out;
}

double dt_degree_bound(double beta, double delta, double d_max) {
  require_positive(beta, "beta");
  require_positive(delta, "delta");
  require_positive(d_max, "d_max");
  return 0.5 * (1.0 / (beta * delta * d_max) - 1.0);
}

bool gamma_region_contains(std::complex<double> z, int d) {
  if (d < 0) throw InputError("gamma_region_contains: d must be nonnegative");
  if (z == std::complex<double>(0.0, 0.0)) return true;
  const double theta = std::abs(std::arg(z));
  if (theta <= kPi / 2.0) return false;
  return std::abs(z) < 2.0 * std::sin((theta - kPi / 2.0) / (2.0 * d + 1.0));
}

Eigen::MatrixXd build_augmented(const Eigen::MatrixXd& h_scaled, int d) {
  if (d < 0) throw InputError("build_augmented: d must be nonnegative");
  if (h_scaled.rows() != h_scaled.cols()) throw InputError("build_augmented: matrix must be square");
  const Eigen::Index m = h_scaled.rows();
  if (d == 0) return Eigen::MatrixXd::Identity(m, m) + h_scaled;
  const Eigen::Index size = (d + 1) * m;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  a.topRightCorner(d * m, d * m).setIdentity();
  a.bottomLeftCorner(m, m) = h_scaled;
  a.bottomRightCorner(m, m) += Eigen::MatrixXd::Identity(m, m);
  return a;
}

DtEnvelope dt_envelope(const Eigen::MatrixXd& h_scaled, int d) {
  const Eigen::MatrixXd a = build_augmented(h_scaled, d);
  DtEnvelope env;
  env.spectral_radius = spectral_radius(a);
  if (!(env.spectral_radius < 1.0)) {
    throw InadmissibleError("delay d = " + std::to_string(d) +
                            " is inadmissible: augmented matrix has spectral radius " +
                            std::to_string(env.spectral_radius));
  }
  const Eigen::MatrixXd p = solve_discrete_lyapunov(a, Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  const Eigen::VectorXd eigs = eig_symmetric(p);
  const double p_min = eigs(0);
  const double p_max = eigs(eigs.size() - 1);
  if (!(p_min > 0.0)) throw NumericalError("dt_envelope: Lyapunov solution is not positive definite");
  env.Q = p / p_max;
  env.omega_bar = std::sqrt(1.0 - 1.0 / p_max);
  env.k_bar = p_max / p_min;
  return env;
}

double envelope_residual(const Eigen::MatrixXd& a_aug, const DtEnvelope& env) {
  const Eigen::Index n = a_aug.rows();
  Eigen::MatrixXd s = a_aug.transpose() * env.Q * a_aug - env.Q +
                      (1.0 - env.omega_bar * env.omega_bar) * Eigen::MatrixXd::Identity(n, n);
  s = (0.5 * (s + s.transpose())).eval();
  const Eigen::VectorXd eigs = eig_symmetric(s);
  return eigs(eigs.size() - 1);
}

double dt_tracking_bound(double gamma, double delta, double k_bar, double omega_bar) {
  if (!(omega_bar < 1.0)) throw InadmissibleError("dt_tracking_bound: omega_bar must be below 1");
  if (!(gamma >= 0.0)) throw InputError("dt_tracking_bound: gamma must be nonnegative");
  if (gamma == 0.0) return 0.0;
  return gamma * delta * k_bar / (1.0 - omega_bar);
}

CtDelayReport ct_report(const Digraph& g, const StructureReport& structure, const Spectrum& spec,
                        double beta, std::optional<double> tau, std::optional<double> gamma,
                        std::optional<double> envelope_horizon, int envelope_grid) {
  CtDelayReport r;
  const auto admissible = ct_admissible_delay(spec, beta);
  r.tau_bar = admissible.tau_bar;
  r.per_eigenvalue_taus = admissible.per_eigenvalue_taus;
  r.tau_degree_bound = ct_degree_bound(structure.d_max, beta);
  r.gamma = gamma;
  if (tau) {
    r.tau = tau;
    if (*tau < r.tau_bar) {
      r.rho_tau = ct_decay_rate(spec, beta, *tau);
      r.k_tau = ct_envelope_gain(g, beta, *tau, envelope_horizon, envelope_grid);
      if (gamma) r.tracking_bound = ct_tracking_bound(*gamma, *r.k_tau, *r.rho_tau);
    }
  }
  return r;
}

DtDelayReport dt_report(const Digraph& g, const StructureReport& structure, const Spectrum& spec,
                        double beta, double delta, std::optional<int> d, std::optional<double> gamma) {
  DtDelayReport r;
  r.stepsize_range_upper = dt_stepsize_range(beta, structure.d_max).second;
  if (!dt_stepsize_admissible(beta, delta, structure.d_max)) {
    throw InadmissibleError("stepsize delta = " + std::to_string(delta) + " is outside (0, " +
                            std::to_string(r.stepsize_range_upper) + ")");
  }
  const auto admissible = dt_admissible_delay(spec, beta, delta);
  r.d_hat = admissible.d_hat;
  r.d_hat_min = admissible.d_hat_min;
  r.d_bar = admissible.d_bar;
  r.max_admissible_d = admissible.max_admissible_d;
  r.d_degree_bound = dt_degree_bound(beta, delta, structure.d_max);
  r.gamma = gamma;
  if (d) {
    if (*d < 0) throw InputError("d must be nonnegative");
    r.d = d;
    const Eigen::MatrixXd h_scaled = delta * disagreement_matrix(laplacian(g), beta);
    r.spectral_radius = spectral_radius(build_augmented(h_scaled, *d));
    if (*d <= r.max_admissible_d && *r.spectral_radius < 1.0) {
      const auto env = dt_envelope(h_scaled, *d);
      r.omega_bar = env.omega_bar;
      r.k_bar = env.k_bar;
      if (gamma) r.tracking_bound = dt_tracking_bound(*gamma, delta, env.k_bar, env.omega_bar);
    }
  }
  return r;
}

}  // namespace dac
