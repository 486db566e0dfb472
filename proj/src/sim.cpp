#include "dac/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dac/bounds.hpp"
#include "dac/errors.hpp"
#include "dde.hpp"

namespace dac {

namespace {

constexpr double kDivergenceCutoff = 1e6;
constexpr int kMinSamples = 100;

void check_common(const Digraph& g, double beta, const ReferenceSignalSet& signals) {
  if (!(beta > 0.0)) throw InputError("beta must be positive");
  if (signals.size() != g.size()) {
    throw InputError("expected " + std::to_string(g.size()) + " reference signals, got " +
                     std::to_string(signals.size()));
  }
}

struct SignalInput {
  const ReferenceSignalSet& signals;
  Eigen::MatrixXd value(double t) const { return signals.at(t); }
  Eigen::MatrixXd value_left(double t) const { return signals.at_left(t); }
};

double decile_mean(const Eigen::VectorXd& s, Eigen::Index begin, Eigen::Index count) {
  return s.segment(begin, count).mean();
}

void finish(Trajectory& traj, const ReferenceSignalSet& signals) {
  const auto te = tracking_error(traj.times, traj.x, signals);
  traj.errors = te.errors;
  traj.steady_error = te.steady_error;
  traj.classification = traj.times.size() >= static_cast<std::size_t>(kMinSamples)
                            ? classify_stability(traj.errors)
                            : Stability::Bounded;
}

}  // namespace

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Converging: return "converging";
    case Stability::Bounded: return "bounded";
    case Stability::Diverging: return "diverging";
  }
  return "bounded";
}

Stability stability_from_string(const std::string& s) {
  if (s == "converging") return Stability::Converging;
  if (s == "bounded") return Stability::Bounded;
  if (s == "diverging") return Stability::Diverging;
  throw InputError("unknown stability class '" + s + "'");
}

Trajectory simulate_ct(const Digraph& g, double beta, double tau, const ReferenceSignalSet& signals,
                       double h, double horizon) {
  check_common(g, beta, signals);
  const auto grid = detail::snap_grid(tau, h, horizon);
  const Eigen::MatrixXd m = -beta * laplacian(g);
  const auto z = detail::integrate_dde(m, SignalInput{signals}, grid, 1);

  Trajectory traj;
  const Eigen::Index samples = static_cast<Eigen::Index>(z.size());
  traj.times.resize(samples);
  traj.x.resize(samples, g.size());
  for (Eigen::Index k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) * grid.h;
    traj.times[k] = t;
    traj.x.row(k) = (z[k].col(0) + signals.at(t)).transpose();
  }
  finish(traj, signals);
  return traj;
}

Trajectory simulate_dt(const Digraph& g, double beta, double delta, int d,
                       const ReferenceSignalSet& signals, int steps) {
  check_common(g, beta, signals);
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  if (d < 0) throw InputError("d must be nonnegative");
  if (steps < 0) throw InputError("steps must be nonnegative");
  const Eigen::MatrixXd update = -delta * beta * laplacian(g);
  const int n = g.size();

  Trajectory traj;
  traj.times.resize(steps + 1);
  traj.x.resize(steps + 1, n);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  for (int k = 0; k <= steps; ++k) {
    const double t = k * delta;
    traj.times[k] = t;
    traj.x.row(k) = (z + signals.at(t)).transpose();
    if (k == steps) break;
    if (k - d >= 0) z += update * traj.x.row(k - d).transpose();
  }
  finish(traj, signals);
  return traj;
}

Eigen::MatrixXd disagreement_coordinates(const Trajectory& traj) {
  const Eigen::MatrixXd& r = disagreement_basis(static_cast<int>(traj.x.cols())).R;
  return traj.errors * r;
}

Eigen::MatrixXd dt_trajectory_formula_all(const Digraph& g, double beta, double delta, int d,
                                          const ReferenceSignalSet& signals, int k_max) {
  check_common(g, beta, signals);
  if (k_max < 0) throw InputError("k must be nonnegative");
  const int n = g.size();
  const Eigen::MatrixXd lap = laplacian(g);
  const Eigen::MatrixXd& r = disagreement_basis(n).R;
  const Eigen::MatrixXd a = delta * disagreement_matrix(lap, beta);
  // e[i] = E(i - d)
  const auto e = delayed_exponential_sequence(a, d, k_max);
  auto expo = [&](int k) -> const Eigen::MatrixXd& { return e[k + d]; };

  std::vector<Eigen::VectorXd> increments(k_max);
  for (int j = 0; j < k_max; ++j) {
    increments[j] = r.transpose() * (signals.at((j + 1) * delta) - signals.at(j * delta));
  }
  const Eigen::VectorXd p0 = r.transpose() * signals.at(0.0);

  Eigen::MatrixXd out(k_max + 1, n - 1);
  for (int k = 0; k <= k_max; ++k) {
    Eigen::VectorXd p = expo(k - d) * p0;
    for (int j = 0; j < k; ++j) p += expo(k - j - 1 - d) * increments[j];
    out.row(k) = p.transpose();
  }
  return out;
}

Eigen::VectorXd dt_trajectory_formula(const Digraph& g, double beta, double delta, int d,
                                      const ReferenceSignalSet& signals, int k) {
  return dt_trajectory_formula_all(g, beta, delta, d, signals, k).row(k).transpose();
}

TrackingError tracking_error(const std::vector<double>& times, const Eigen::MatrixXd& x,
                             const ReferenceSignalSet& signals) {
  if (x.cols() < 2) throw InputError("tracking error needs at least two agents");
  if (static_cast<Eigen::Index>(times.size()) != x.rows()) {
    throw InputError("tracking error: times and samples are not aligned");
  }
  if (signals.size() != x.cols()) throw InputError("tracking error: signal count mismatch");
  TrackingError te;
  te.errors.resize(x.rows(), x.cols());
  for (Eigen::Index k = 0; k < x.rows(); ++k) {
    te.errors.row(k) = x.row(k).array() - signals.average(times[k]);
  }
  te.steady_error = steady_error(te.errors);
  return te;
}

double steady_error(const Eigen::MatrixXd& errors) {
  if (errors.rows() == 0) return 0.0;
  const Eigen::Index count = std::max<Eigen::Index>(1, errors.rows() / 10);
  const Eigen::MatrixXd tail = errors.bottomRows(count).cwiseAbs();
  return tail.colwise().mean().maxCoeff();
}

Stability classify_stability(const Eigen::MatrixXd& errors) {
  if (errors.rows() < kMinSamples) {
    throw InputError("classify_stability: need at least " + std::to_string(kMinSamples) + " samples");
  }
  Eigen::VectorXd s(errors.rows());
  for (Eigen::Index k = 0; k < errors.rows(); ++k) {
    const double v = errors.row(k).cwiseAbs().maxCoeff();
    s(k) = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }
  if (!(s.maxCoeff() <= kDivergenceCutoff)) return Stability::Diverging;

  const Eigen::Index rows = s.size();
  const Eigen::Index decile = rows / 10;
  const double first = decile_mean(s, 0, decile);
  const double middle = decile_mean(s, rows / 2 - decile / 2, decile);
  const double last = decile_mean(s, rows - decile, decile);
  if (last > 10.0 * middle && last > 1e-12) return Stability::Diverging;
  if (last < 0.5 * first || last < 1e-12) return Stability::Converging;
  return Stability::Bounded;
}

Stability classify_stability(const Trajectory& traj) { return classify_stability(traj.errors); }

double signal_variation_gamma(const ReferenceSignalSet& signals, double horizon, SignalMode mode,
                              double delta) {
  if (!(horizon > 0.0)) throw InputError("gamma: horizon must be positive");
  const int n = signals.size();
  if (n < 2) throw InputError("gamma: need at least two signals");
  auto project = [](const Eigen::VectorXd& v) { return (v.array() - v.mean()).matrix().norm(); };
  double gamma = 0.0;
  if (mode == SignalMode::Ct) {
    constexpr int kGrid = 10000;
    for (int i = 0; i < kGrid; ++i) {
      const double t = horizon * i / (kGrid - 1);
      gamma = std::max(gamma, project(signals.derivative_at(t)));
    }
    return gamma;
  }
  if (!(delta > 0.0)) throw InputError("gamma: dt mode needs a positive delta");
  const long steps = static_cast<long>(std::ceil(horizon / delta - 1e-9));
  Eigen::VectorXd prev = signals.at(0.0);
  for (long k = 0; k < steps; ++k) {
    Eigen::VectorXd next = signals.at((k + 1) * delta);
    gamma = std::max(gamma, project(next - prev) / delta);
    prev = std::move(next);
  }
  return gamma;
}

}  // namespace dac
