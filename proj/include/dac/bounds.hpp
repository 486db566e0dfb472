#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dac/graph.hpp"
#include "dac/spectral.hpp"

namespace dac {

struct AlgorithmParams {
  double beta = 1.0;
  double delta = 0.0;  // DT stepsize
  double tau = 0.0;    // CT delay
  int d = 0;           // DT delay in steps

  // Throws InputError on beta <= 0, tau < 0, d < 0, or (dt) delta <= 0.
  void check(bool dt) const;
};

struct CtDelayReport {
  double tau_bar = 0.0;
  double tau_degree_bound = 0.0;
  std::vector<double> per_eigenvalue_taus;
  // Filled when a delay is queried and it is admissible.
  std::optional<double> tau;
  std::optional<double> rho_tau;
  std::optional<double> k_tau;
  std::optional<double> gamma;
  std::optional<double> tracking_bound;
};

struct DtDelayReport {
  std::vector<double> d_hat;
  double d_hat_min = 0.0;
  int d_bar = 0;
  int max_admissible_d = 0;
  double d_degree_bound = 0.0;
  double stepsize_range_upper = 0.0;
  std::optional<int> d;
  std::optional<double> spectral_radius;  // of A_aug
  std::optional<double> omega_bar;
  std::optional<double> k_bar;
  std::optional<double> gamma;
  std::optional<double> tracking_bound;
};

// H = -beta R^T L R, the disagreement dynamics in the basis R.
Eigen::MatrixXd disagreement_matrix(const Eigen::MatrixXd& laplacian, double beta);

struct CtAdmissibleDelay {
  double tau_bar = 0.0;
  std::vector<double> per_eigenvalue_taus;  // same order as Spectrum::nonzero_eigs
};

// tau_i = |atan(Re/Im)| / (beta |lambda_i|), pi/2 numerator for real
// eigenvalues; tau_bar = min tau_i.
CtAdmissibleDelay ct_admissible_delay(const Spectrum& spec, double beta);

// 1 / (2 beta d_max)
double ct_degree_bound(double d_max, double beta);

// -(1/tau) max_i Re W_0(-beta lambda_i tau); beta min Re lambda_i at tau = 0.
// Throws InadmissibleError for tau >= tau_bar.
double ct_decay_rate(const Spectrum& spec, double beta, double tau);

// max over i and branches k in {-1, 0, 1} of Re W_k(-beta lambda_i tau) / tau:
// the rightmost characteristic root of the delayed disagreement dynamics.
double ct_rightmost_root(const Spectrum& spec, double beta, double tau);

struct CtEnvelope {
  double k_tau = 1.0;
  double rho_tau = 0.0;
  double horizon = 0.0;
  double step = 0.0;
  std::vector<double> times;
  std::vector<double> phi_norms;  // ||Phi(t)||_2 on `times`
};

// Fundamental matrix Phi of p' = H p(t - tau) (Phi(0) = I, zero
// pre-history) integrated on a grid of about `grid` points over `horizon`
// (default 10 / rho_tau); k_tau = max ||Phi(t)|| e^{rho_tau t}.
// Throws InputError if the horizon is shorter than 5 / rho_tau.
CtEnvelope ct_envelope(const Digraph& g, double beta, double tau, std::optional<double> horizon = {},
                       int grid = 2000);
double ct_envelope_gain(const Digraph& g, double beta, double tau, std::optional<double> horizon = {},
                        int grid = 2000);

// gamma k_tau / rho_tau
double ct_tracking_bound(double gamma, double k_tau, double rho_tau);

// The open interval (0, 1 / (beta d_max)).
std::pair<double, double> dt_stepsize_range(double beta, double d_max);
bool dt_stepsize_admissible(double beta, double delta, double d_max);

struct DtAdmissibleDelay {
  std::vector<double> d_hat;
  double d_hat_min = 0.0;
  int d_bar = 0;
  int max_admissible_d = 0;
};

// d_hat_i = ((pi - 2|arg lambda_i|) / (2 asin(beta |lambda_i| delta / 2)) - 1) / 2,
// d_bar = floor(d_hat_min) + 1, max_admissible_d = d_bar - 1.
DtAdmissibleDelay dt_admissible_delay(const Spectrum& spec, double beta, double delta);

// (1 / (beta delta d_max) - 1) / 2
double dt_degree_bound(double beta, double delta, double d_max);

// Strictly inside the curve 2i sin(phi / (2d+1)) e^{i phi}: with
// theta = |arg z|, theta > pi/2 and |z| < 2 sin((theta - pi/2) / (2d+1)).
bool gamma_region_contains(std::complex<double> z, int d);

// One-step map of the stacked history [p(k-d); ...; p(k)] under
// p(k+1) = p(k) + H_scaled p(k-d). d = 0 gives I + H_scaled.
Eigen::MatrixXd build_augmented(const Eigen::MatrixXd& h_scaled, int d);

struct DtEnvelope {
  double omega_bar = 0.0;
  double k_bar = 1.0;
  double spectral_radius = 0.0;
  Eigen::MatrixXd Q;  // certificate, 0 < Q <= I
};

// Certificate for A^T Q A - Q <= -(1 - omega^2) I with Q <= I: P solves
// A^T P A - P = -I, Q = P / lambda_max(P), omega_bar^2 = 1 - 1/lambda_max(P),
// k_bar = 1 / lambda_min(Q). Throws InadmissibleError if A_aug is not Schur.
DtEnvelope dt_envelope(const Eigen::MatrixXd& h_scaled, int d);

// lambda_max(A^T Q A - Q + (1 - omega^2) I)
double envelope_residual(const Eigen::MatrixXd& a_aug, const DtEnvelope& env);

// gamma delta k_bar / (1 - omega_bar)
double dt_tracking_bound(double gamma, double delta, double k_bar, double omega_bar);

CtDelayReport ct_report(const Digraph& g, const StructureReport& structure, const Spectrum& spec,
                        double beta, std::optional<double> tau = {}, std::optional<double> gamma = {},
                        std::optional<double> envelope_horizon = {}, int envelope_grid = 2000);

DtDelayReport dt_report(const Digraph& g, const StructureReport& structure, const Spectrum& spec,
                        double beta, double delta, std::optional<int> d = {},
                        std::optional<double> gamma = {});

}  // namespace dac
