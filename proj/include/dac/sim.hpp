#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dac/graph.hpp"
#include "dac/signals.hpp"

namespace dac {

enum class Stability { Converging, Bounded, Diverging };

std::string to_string(Stability s);
Stability stability_from_string(const std::string& s);

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd x;       // samples x agents
  Eigen::MatrixXd errors;  // x - average of the references
  Stability classification = Stability::Bounded;
  double steady_error = 0.0;
};

// Delayed matrix exponential: sum_{l=0}^{m_k} C(k - (l-1) d, l) A^l with
// m_k = ceil(k / (d+1)), the solution of X(k+1) = X(k) + A X(k-d) with
// X(j) = I for j in [-d, 0]. Accepts k >= -d. The alternating sum is
// accumulated in extended precision.
Eigen::MatrixXd delayed_exponential(const Eigen::MatrixXd& a, int d, int k);

// delayed_exponential for k = -d, ..., k_max (element i holds k = i - d),
// sharing the matrix powers across k.
std::vector<Eigen::MatrixXd> delayed_exponential_sequence(const Eigen::MatrixXd& a, int d, int k_max);

// The same quantity by running the recurrence in double precision.
Eigen::MatrixXd delayed_exponential_recurrence(const Eigen::MatrixXd& a, int d, int k);

// CT algorithm z' = -beta L x(t - tau), x = z + r, z(0) = 0 with zero
// pre-history. The step is adjusted to tau / round(tau / h).
Trajectory simulate_ct(const Digraph& g, double beta, double tau, const ReferenceSignalSet& signals,
                       double h, double horizon);

// DT algorithm z(k+1) = z(k) - delta beta L x(k-d), x(k) = z(k) + r(k delta).
// Returns K + 1 samples (k = 0..K).
Trajectory simulate_dt(const Digraph& g, double beta, double delta, int d,
                       const ReferenceSignalSet& signals, int steps);

// Disagreement coordinates R^T (x - avg(r) 1) of every sample.
Eigen::MatrixXd disagreement_coordinates(const Trajectory& traj);

// Closed-form disagreement state at step k:
//   p(k) = E(k-d) p(0) + sum_{j<k} E(k-j-1-d) R^T (r(j+1) - r(j)),
// E = delayed exponential of delta H with delay d.
Eigen::VectorXd dt_trajectory_formula(const Digraph& g, double beta, double delta, int d,
                                      const ReferenceSignalSet& signals, int k);
// Rows k = 0..k_max of the same formula.
Eigen::MatrixXd dt_trajectory_formula_all(const Digraph& g, double beta, double delta, int d,
                                          const ReferenceSignalSet& signals, int k_max);

struct TrackingError {
  Eigen::MatrixXd errors;
  double steady_error = 0.0;
};

// e_i = x_i - (1/n) sum_j r_j(t) at each of `times`.
TrackingError tracking_error(const std::vector<double>& times, const Eigen::MatrixXd& x,
                             const ReferenceSignalSet& signals);

// max over agents of mean |e_i| over the final 10% of samples.
double steady_error(const Eigen::MatrixXd& errors);

// Decile rule on s(t) = max_i |e_i|: Diverging if max s > 1e6 or the final
// decile mean exceeds 10x the mid-run decile mean; Converging if the final
// decile mean is below half the first decile mean (or numerically zero);
// Bounded otherwise. Needs at least 100 samples.
Stability classify_stability(const Eigen::MatrixXd& errors);
Stability classify_stability(const Trajectory& traj);

enum class SignalMode { Ct, Dt };

// ct: sup over 10^4 grid points of ||P r'(t)||_2 on [0, horizon];
// dt: sup over k < horizon / delta of ||P (r((k+1) delta) - r(k delta))||_2 / delta,
// with P = I - 11^T / n.
double signal_variation_gamma(const ReferenceSignalSet& signals, double horizon, SignalMode mode,
                              double delta = 0.0);

}  // namespace dac
